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

#include "catgate/fock_state.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>

#include "catgate/errors.h"

namespace catgate {

std::size_t dimension_limit() {
    static const std::size_t limit = [] {
        if (const char *env = std::getenv("CATGATE_DIM_LIMIT")) {
            char *end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) {
                return static_cast<std::size_t>(v);
            }
        }
        return kDefaultDimensionLimit;
    }();
    return limit;
}

int default_cutoff(double max_amplitude) {
    double mu = std::abs(max_amplitude);
    return static_cast<int>(std::ceil(mu * mu + 6.0 * mu + 10.0));
}

std::size_t checked_dimension(std::span<const int> cutoffs) {
    const std::size_t limit = dimension_limit();
    std::size_t dim = 1;
    for (int c : cutoffs) {
        if (c < 0) {
            throw std::invalid_argument("negative cutoff");
        }
        std::size_t d = static_cast<std::size_t>(c) + 1;
        if (dim > limit / d) {
            throw SizeOverflow("tensor dimension exceeds limit of " + std::to_string(limit));
        }
        dim *= d;
    }
    if (dim > limit) {
        throw SizeOverflow("tensor dimension " + std::to_string(dim) + " exceeds limit of " +
                           std::to_string(limit));
    }
    return dim;
}

// ---------------------------------------------------------------------------
// PureFockState

PureFockState::PureFockState(std::vector<int> cutoffs, CVector amplitudes, double norm_tracking)
    : cutoffs_(std::move(cutoffs)), amplitudes_(std::move(amplitudes)), norm_tracking_(norm_tracking) {
    std::size_t expected = 1;
    for (int c : cutoffs_) {
        if (c < 0) {
            throw std::invalid_argument("negative cutoff");
        }
        expected *= static_cast<std::size_t>(c) + 1;
    }
    if (static_cast<std::size_t>(amplitudes_.size()) != expected) {
        throw std::invalid_argument("amplitude tensor shape does not match cutoffs");
    }
}

PureFockState PureFockState::vacuum(std::vector<int> cutoffs) {
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(checked_dimension(cutoffs)));
    amps(0) = 1.0;
    return PureFockState(std::move(cutoffs), std::move(amps));
}

PureFockState PureFockState::basis(std::vector<int> cutoffs, std::span<const int> occupation) {
    PureFockState s = vacuum(std::move(cutoffs));
    s.amplitudes_(0) = 0.0;
    s.amplitudes_(static_cast<Eigen::Index>(s.index_of(occupation))) = 1.0;
    return s;
}

PureFockState PureFockState::scalar(Complex value) {
    CVector amps(1);
    amps(0) = value;
    return PureFockState({}, std::move(amps));
}

std::size_t PureFockState::stride(std::size_t mode) const {
    std::size_t s = 1;
    for (std::size_t k = mode + 1; k < cutoffs_.size(); ++k) {
        s *= static_cast<std::size_t>(cutoffs_[k]) + 1;
    }
    return s;
}

std::size_t PureFockState::index_of(std::span<const int> occupation) const {
    if (occupation.size() != cutoffs_.size()) {
        throw std::invalid_argument("occupation length does not match mode count");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
        if (occupation[k] < 0 || occupation[k] > cutoffs_[k]) {
            throw std::out_of_range("occupation exceeds cutoff");
        }
        idx = idx * (static_cast<std::size_t>(cutoffs_[k]) + 1) + static_cast<std::size_t>(occupation[k]);
    }
    return idx;
}

Complex PureFockState::amplitude(std::span<const int> occupation) const {
    return amplitudes_(static_cast<Eigen::Index>(index_of(occupation)));
}

PureFockState PureFockState::scaled(Complex factor) const {
    return PureFockState(cutoffs_, amplitudes_ * factor, norm_tracking_ * std::abs(factor));
}

PureFockState PureFockState::normalized() const {
    double n = norm();
    if (n < kZeroNorm) {
        throw ZeroNorm("cannot normalize a zero state");
    }
    return PureFockState(cutoffs_, amplitudes_ / n, norm_tracking_);
}

std::vector<double> PureFockState::marginal(std::size_t mode) const {
    if (mode >= cutoffs_.size()) {
        throw std::out_of_range("mode index out of range");
    }
    const std::size_t d = static_cast<std::size_t>(cutoffs_[mode]) + 1;
    const std::size_t inner = stride(mode);
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < dimension(); ++i) {
        out[(i / inner) % d] += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
    }
    return out;
}

std::vector<double> PureFockState::total_photon_distribution() const {
    int max_total = 0;
    for (int c : cutoffs_) {
        max_total += c;
    }
    std::vector<double> out(static_cast<std::size_t>(max_total) + 1, 0.0);
    std::vector<int> occ(cutoffs_.size(), 0);
    for (std::size_t i = 0; i < dimension(); ++i) {
        int total = 0;
        for (int o : occ) {
            total += o;
        }
        out[static_cast<std::size_t>(total)] += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
        for (std::size_t k = cutoffs_.size(); k-- > 0;) {
            if (++occ[k] <= cutoffs_[k]) {
                break;
            }
            occ[k] = 0;
        }
    }
    return out;
}

double PureFockState::tail_mass(std::size_t mode) const {
    double total = norm_squared();
    if (total < kZeroNorm * kZeroNorm) {
        return 0.0;
    }
    return marginal(mode).back() / total;
}

double PureFockState::max_tail_mass() const {
    double m = 0.0;
    for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
        m = std::max(m, tail_mass(k));
    }
    return m;
}

PureFockState PureFockState::padded(std::span<const int> cutoffs) const {
    if (cutoffs.size() != cutoffs_.size()) {
        throw std::invalid_argument("padding requires the same number of modes");
    }
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (cutoffs[k] < cutoffs_[k]) {
            throw std::invalid_argument("padding cannot shrink a cutoff");
        }
    }
    std::vector<int> target(cutoffs.begin(), cutoffs.end());
    if (target == cutoffs_) {
        return *this;
    }
    PureFockState out = vacuum(target);
    out.amplitudes_.setZero();
    out.norm_tracking_ = norm_tracking_;
    std::vector<int> occ(cutoffs_.size(), 0);
    for (std::size_t i = 0; i < dimension(); ++i) {
        out.amplitudes_(static_cast<Eigen::Index>(out.index_of(occ))) = amplitudes_(static_cast<Eigen::Index>(i));
        for (std::size_t k = cutoffs_.size(); k-- > 0;) {
            if (++occ[k] <= cutoffs_[k]) {
                break;
            }
            occ[k] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(std::vector<int> cutoffs, CMatrix matrix)
    : cutoffs_(std::move(cutoffs)), matrix_(std::move(matrix)) {
    std::size_t expected = 1;
    for (int c : cutoffs_) {
        expected *= static_cast<std::size_t>(c) + 1;
    }
    if (static_cast<std::size_t>(matrix_.rows()) != expected || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("density matrix shape does not match cutoffs");
    }
    trace_ = matrix_.trace().real();
}

DensityOperator DensityOperator::from_pure(const PureFockState &state) {
    const CVector &v = state.amplitudes();
    return DensityOperator(state.cutoffs(), v * v.adjoint());
}

double DensityOperator::purity() const {
    if (trace_ < kZeroNorm) {
        throw ZeroNorm("purity of a zero-trace operator");
    }
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix_.cwiseAbs2().sum() / (trace_ * trace_);
}

double DensityOperator::hermiticity_error() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
    CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityOperator::satisfies_invariants(double tol) const {
    return hermiticity_error() <= tol && min_eigenvalue() >= -tol && trace_ >= -tol && trace_ <= 1.0 + tol;
}

// ---------------------------------------------------------------------------
// MixedState

MixedState::MixedState(PureFockState pure) : components_{std::move(pure)} {}

MixedState::MixedState(std::vector<PureFockState> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("mixed state needs at least one component");
    }
    for (const auto &c : components_) {
        if (c.cutoffs() != components_.front().cutoffs()) {
            throw std::invalid_argument("mixed state components disagree on cutoffs");
        }
    }
}

const std::vector<int> &MixedState::cutoffs() const { return components_.front().cutoffs(); }

double MixedState::trace() const {
    double t = 0.0;
    for (const auto &c : components_) {
        t += c.norm_squared();
    }
    return t;
}

double MixedState::purity() const {
    double tr = trace();
    if (tr < kZeroNorm) {
        throw ZeroNorm("purity of a zero-trace state");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < components_.size(); ++j) {
        sum += components_[j].norm_squared() * components_[j].norm_squared();
        for (std::size_t k = j + 1; k < components_.size(); ++k) {
            Complex ov = components_[j].amplitudes().dot(components_[k].amplitudes());
            sum += 2.0 * std::norm(ov);
        }
    }
    return sum / (tr * tr);
}

DensityOperator MixedState::to_density() const {
    const auto dim = static_cast<Eigen::Index>(components_.front().dimension());
    CMatrix rho = CMatrix::Zero(dim, dim);
    for (const auto &c : components_) {
        rho.noalias() += c.amplitudes() * c.amplitudes().adjoint();
    }
    return DensityOperator(cutoffs(), std::move(rho));
}

std::vector<double> MixedState::tail_masses() const {
    std::vector<double> out(cutoffs().size(), 0.0);
    double tr = trace();
    if (tr < kZeroNorm * kZeroNorm) {
        return out;
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (const auto &c : components_) {
            out[k] += c.marginal(k).back();
        }
        out[k] /= tr;
    }
    return out;
}

double MixedState::max_tail_mass() const {
    auto t = tail_masses();
    return t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());
}

}  // namespace catgate
