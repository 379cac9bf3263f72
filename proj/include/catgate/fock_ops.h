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

#ifndef CATGATE_FOCK_OPS_H
#define CATGATE_FOCK_OPS_H

#include <cstddef>
#include <span>
#include <vector>

#include "catgate/fock_state.h"

namespace catgate {

/// Truncation weight 1 - sum_{n<=cutoff} P(n) of a coherent state.
double coherent_truncation_loss(Complex alpha, int cutoff);

/// |alpha> = e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n>, truncated at `cutoff`.
/// Throws CutoffTooSmall when the discarded Poisson weight exceeds `tail_tolerance`.
PureFockState coherent_state(Complex alpha, int cutoff, double tail_tolerance = kTailTolerance);

/// Multi-mode product of coherent states.
PureFockState coherent_product(std::span<const Complex> alphas, std::span<const int> cutoffs);

/// Applies `op` ((N+1) x (N+1)) to one mode.
PureFockState apply_mode_operator(const PureFockState &state, std::size_t mode, const CMatrix &op);

/// Matrix elements <m|D(beta)|n>, m, n = 0..cutoff, of the untruncated
/// displacement: the generator is exponentiated (one tridiagonal eigensolve)
/// on a padded space wide enough to hold D(beta)|cutoff>, then cut back to the
/// leading block. Not unitary on the truncated space; displace() checks the
/// norm it loses.
CMatrix displacement_matrix(Complex beta, int cutoff);

/// exp of the truncated generator beta a^dag - beta* a: unitary on the
/// truncated space but inaccurate near the cutoff.
CMatrix truncated_generator_displacement(Complex beta, int cutoff);

/// Displacement D(beta) on one mode. CutoffTooSmall when the norm lost past
/// the cutoff exceeds kUnitaryTolerance of the input norm.
PureFockState displace(const PureFockState &state, std::size_t mode, Complex beta);
/// Same, with a displacement matrix built once by displacement_matrix().
PureFockState displace(const PureFockState &state, std::size_t mode, const CMatrix &displacement);
/// Ensemble form; the norm-loss check applies to the total trace.
MixedState displace(const MixedState &state, std::size_t mode, const CMatrix &displacement);

/// a on one mode. Output is unnormalized; norm_tracking picks up ||out|| / ||in||.
PureFockState annihilate(const PureFockState &state, std::size_t mode);

/// Two-mode beam splitter with Heisenberg action
///   a -> t a + r b,   b -> t b - r a,   r = sqrt(1 - t^2),
/// where a is `mode_a` and b is `mode_b`. On states, |alpha, beta> maps to
/// |t alpha + r beta, t beta - r alpha>, and |1,0> to t|1,0> - r|0,1>.
/// Built block by block in fixed total photon number, so photon number is
/// conserved exactly. CutoffTooSmall if more than kUnitaryTolerance of the
/// norm leaves the truncated space.
PureFockState beamsplitter(const PureFockState &state, std::size_t mode_a, std::size_t mode_b, double t);

/// Precomputed beam-splitter blocks for fixed cutoffs, reusable across the
/// components of an ensemble.
class BeamSplitter {
   public:
    BeamSplitter(int cutoff_a, int cutoff_b, double t);
    PureFockState apply(const PureFockState &state, std::size_t mode_a, std::size_t mode_b) const;
    /// Leakage is checked against the trace of the whole ensemble, so faint
    /// components carry no tolerance of their own.
    MixedState apply(const MixedState &state, std::size_t mode_a, std::size_t mode_b) const;
    double transmissivity() const { return t_; }

   private:
    CVector transform(const PureFockState &state, std::size_t mode_a, std::size_t mode_b) const;

    int cutoff_a_;
    int cutoff_b_;
    double t_;
    // blocks_[n](k', k): amplitude <k', n-k'| U |k, n-k>, k photons in mode a.
    std::vector<Eigen::MatrixXd> blocks_;
};

/// Outer product; cutoff lists are concatenated. SizeOverflow above dimension_limit().
PureFockState tensor(const PureFockState &a, const PureFockState &b);
DensityOperator tensor(const DensityOperator &a, const DensityOperator &b);

/// <a|b>. Smaller cutoffs are zero-padded to match.
Complex overlap(const PureFockState &a, const PureFockState &b);

/// |<t|a>|^2 / (||t||^2 ||a||^2). ZeroNorm if either norm is below kZeroNorm.
double fidelity(const PureFockState &target, const PureFockState &actual);
/// <t|rho|t> / (||t||^2 tr rho).
double fidelity(const PureFockState &target, const DensityOperator &actual);
double fidelity(const PureFockState &target, const MixedState &actual);

/// Brings `state` onto `cutoffs` by zero-padding; throws if any cutoff would shrink.
PureFockState match_cutoffs(const PureFockState &state, std::span<const int> cutoffs);

}  // namespace catgate

#endif
