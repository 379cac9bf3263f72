// Copyright 2026 The catgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CATGATE_FOCK_STATE_H
#define CATGATE_FOCK_STATE_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace catgate {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Truncation weight tolerated when constructing coherent states.
inline constexpr double kTailTolerance = 1e-10;
/// Norm loss tolerated across a unitary on the truncated space.
inline constexpr double kUnitaryTolerance = 1e-8;
/// Norms below this are treated as the zero vector.
inline constexpr double kZeroNorm = 1e-14;
/// Default cap on the tensor dimension (product of per-mode sizes).
inline constexpr std::size_t kDefaultDimensionLimit = 2'000'000;

/// Tensor size cap. Reads CATGATE_DIM_LIMIT once, otherwise the default.
std::size_t dimension_limit();

/// Cutoff policy for a mode whose largest coherent amplitude is `max_amplitude`:
/// ceil(|mu|^2 + 6|mu| + 10).
int default_cutoff(double max_amplitude);

/// Product of (cutoff + 1) over modes. Throws SizeOverflow above dimension_limit().
std::size_t checked_dimension(std::span<const int> cutoffs);

/// Pure state on a product of truncated Fock modes.
///
/// Amplitudes are stored row-major over the occupation multi-index with mode 0
/// most significant, so mode k has stride prod_{j>k}(N_j + 1). A state with no
/// modes has dimension 1 and carries a single scalar amplitude.
///
/// States produced by non-unitary operations are left unnormalized;
/// norm_tracking() accumulates the product of ||out|| / ||in|| ratios.
class PureFockState {
   public:
    PureFockState() = default;
    PureFockState(std::vector<int> cutoffs, CVector amplitudes, double norm_tracking = 1.0);

    static PureFockState vacuum(std::vector<int> cutoffs);
    static PureFockState basis(std::vector<int> cutoffs, std::span<const int> occupation);
    static PureFockState scalar(Complex value);

    const std::vector<int> &cutoffs() const { return cutoffs_; }
    std::size_t num_modes() const { return cutoffs_.size(); }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector &amplitudes() const { return amplitudes_; }
    double norm_tracking() const { return norm_tracking_; }

    std::size_t stride(std::size_t mode) const;
    std::size_t index_of(std::span<const int> occupation) const;
    Complex amplitude(std::span<const int> occupation) const;

    double norm_squared() const { return amplitudes_.squaredNorm(); }
    double norm() const { return amplitudes_.norm(); }

    PureFockState scaled(Complex factor) const;
    PureFockState normalized() const;

    /// Photon-number distribution of one mode (unnormalized: sums to norm^2).
    std::vector<double> marginal(std::size_t mode) const;
    /// Distribution of the total photon number over all modes (sums to norm^2).
    std::vector<double> total_photon_distribution() const;
    /// Relative weight sitting at n = N_k of `mode`.
    double tail_mass(std::size_t mode) const;
    double max_tail_mass() const;

    /// Zero-pads to larger (or equal) cutoffs.
    PureFockState padded(std::span<const int> cutoffs) const;

   private:
    std::vector<int> cutoffs_;
    CVector amplitudes_ = CVector::Ones(1);
    double norm_tracking_ = 1.0;
};

/// Positive-semidefinite operator on a truncated multimode Fock space, possibly
/// with trace below one when it describes a conditional (post-selected) state.
class DensityOperator {
   public:
    DensityOperator() = default;
    DensityOperator(std::vector<int> cutoffs, CMatrix matrix);

    static DensityOperator from_pure(const PureFockState &state);

    const std::vector<int> &cutoffs() const { return cutoffs_; }
    std::size_t num_modes() const { return cutoffs_.size(); }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
    const CMatrix &matrix() const { return matrix_; }
    double trace() const { return trace_; }
    double purity() const;

    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// True when the Hermitian, PSD and trace bounds hold at tolerance `tol`.
    bool satisfies_invariants(double tol = 1e-10) const;

   private:
    std::vector<int> cutoffs_;
    CMatrix matrix_ = CMatrix::Ones(1, 1);
    double trace_ = 1.0;
};

/// Density operator kept as an ensemble of unnormalized pure components,
/// rho = sum_k |psi_k><psi_k|. Measurement branches and traced-out modes
/// append components instead of materializing the full matrix.
class MixedState {
   public:
    MixedState() : components_{PureFockState()} {}
    explicit MixedState(PureFockState pure);
    /// `components` must be non-empty and share one cutoff list.
    explicit MixedState(std::vector<PureFockState> components);

    const std::vector<PureFockState> &components() const { return components_; }
    const std::vector<int> &cutoffs() const;
    bool is_pure() const { return components_.size() == 1; }

    double trace() const;
    /// tr(rho^2) / tr(rho)^2.
    double purity() const;
    DensityOperator to_density() const;

    /// Applies a linear map to every component.
    template <typename F>
    MixedState map(F &&f) const {
        std::vector<PureFockState> out;
        out.reserve(components_.size());
        for (const auto &c : components_) {
            out.push_back(f(c));
        }
        return MixedState(std::move(out));
    }

    double max_tail_mass() const;
    std::vector<double> tail_masses() const;

   private:
    std::vector<PureFockState> components_;
};

}  // namespace catgate

#endif
