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

#include "catgate/fock_ops.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "catgate/errors.h"

namespace catgate {

namespace {

void check_mode(const PureFockState &state, std::size_t mode) {
    if (mode >= state.num_modes()) {
        throw std::out_of_range("mode index " + std::to_string(mode) + " out of range");
    }
}

// log of the n-th coherent amplitude magnitude: -|a|^2/2 + n log|a| - log(n!)/2.
double log_coherent_magnitude(double abs_alpha, int n) {
    return -0.5 * abs_alpha * abs_alpha + n * std::log(abs_alpha) - 0.5 * std::lgamma(n + 1.0);
}

}  // namespace

double coherent_truncation_loss(Complex alpha, int cutoff) {
    const double a = std::abs(alpha);
    if (a == 0.0) {
        return 0.0;
    }
    // Sum the discarded Poisson weights directly to avoid cancellation in 1 - sum.
    const double mean = a * a;
    double loss = 0.0;
    for (int n = cutoff + 1;; ++n) {
        double p = std::exp(2.0 * log_coherent_magnitude(a, n));
        loss += p;
        if (n > mean && (p < 1e-300 || p < loss * 1e-17)) {
            break;
        }
    }
    return loss;
}

PureFockState coherent_state(Complex alpha, int cutoff, double tail_tolerance) {
    if (cutoff < 1) {
        throw std::invalid_argument("coherent_state requires cutoff >= 1");
    }
    const double loss = coherent_truncation_loss(alpha, cutoff);
    if (loss > tail_tolerance) {
        std::ostringstream msg;
        msg << "cutoff " << cutoff << " too small for |alpha| = " << std::abs(alpha)
            << ": truncated tail mass " << loss << " exceeds " << tail_tolerance;
        throw CutoffTooSmall(msg.str());
    }
    const std::size_t dim = checked_dimension(std::vector<int>{cutoff});
    CVector amps(static_cast<Eigen::Index>(dim));
    const double a = std::abs(alpha);
    const double phase = std::arg(alpha);
    if (a == 0.0) {
        amps.setZero();
        amps(0) = 1.0;
    } else {
        for (int n = 0; n <= cutoff; ++n) {
            amps(n) = std::polar(std::exp(log_coherent_magnitude(a, n)), n * phase);
        }
    }
    return PureFockState({cutoff}, std::move(amps));
}

PureFockState coherent_product(std::span<const Complex> alphas, std::span<const int> cutoffs) {
    if (alphas.size() != cutoffs.size()) {
        throw std::invalid_argument("coherent_product: amplitude and cutoff counts differ");
    }
    PureFockState out = PureFockState::scalar(1.0);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        out = tensor(out, coherent_state(alphas[k], cutoffs[k]));
    }
    return out;
}

PureFockState apply_mode_operator(const PureFockState &state, std::size_t mode, const CMatrix &op) {
    check_mode(state, mode);
    const auto d_in = static_cast<Eigen::Index>(state.cutoffs()[mode]) + 1;
    if (op.cols() != d_in) {
        throw std::invalid_argument("mode operator has the wrong input dimension");
    }
    const auto d_out = op.rows();
    const auto inner = static_cast<Eigen::Index>(state.stride(mode));
    const auto outer = static_cast<Eigen::Index>(state.dimension()) / (d_in * inner);

    std::vector<int> cutoffs = state.cutoffs();
    cutoffs[mode] = static_cast<int>(d_out) - 1;
    CVector out(outer * d_out * inner);

    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (Eigen::Index o = 0; o < outer; ++o) {
        Eigen::Map<const RowMajor> in_block(state.amplitudes().data() + o * d_in * inner, d_in, inner);
        Eigen::Map<RowMajor> out_block(out.data() + o * d_out * inner, d_out, inner);
        out_block.noalias() = op * in_block;
    }
    return PureFockState(std::move(cutoffs), std::move(out), state.norm_tracking());
}

namespace {

/// Leading `keep` x `keep` block of exp(t A) for the real antisymmetric
/// tridiagonal A with A(k+1, k) = sub(k) = -A(k, k+1). With S = diag(i^k) and
/// X the symmetric tridiagonal with the same off-diagonal, A = -i S X S^-1, so
/// exp(t A) = S V e^{-i t L} V^T S^-1 needs one real eigensolve.
CMatrix exp_tridiagonal_generator(const Eigen::VectorXd &sub, double t, Eigen::Index keep) {
    const Eigen::Index d = sub.size() + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(Eigen::VectorXd::Zero(d), sub, Eigen::ComputeEigenvectors);
    const Eigen::MatrixXd top = es.eigenvectors().topRows(keep);
    const Eigen::ArrayXd angle = -t * es.eigenvalues().array();
    const Eigen::MatrixXd re = top * angle.cos().matrix().asDiagonal() * top.transpose();
    const Eigen::MatrixXd im = top * angle.sin().matrix().asDiagonal() * top.transpose();
    static const Complex kIPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    CMatrix out(keep, keep);
    for (Eigen::Index k = 0; k < keep; ++k) {
        for (Eigen::Index j = 0; j < keep; ++j) {
            out(j, k) = kIPow[((j - k) % 4 + 4) % 4] * Complex(re(j, k), im(j, k));
        }
    }
    return out;
}

}  // namespace

CMatrix displacement_matrix(Complex beta, int cutoff) {
    // D(beta)|cutoff> stays below this level, so the leading block of the
    // padded exponential agrees with the untruncated operator.
    const double reach = std::sqrt(static_cast<double>(cutoff)) + std::abs(beta);
    const int padded = std::max(cutoff, default_cutoff(reach)) + 10;
    Eigen::VectorXd sub(padded);
    for (int k = 0; k < padded; ++k) {
        sub(k) = std::sqrt(static_cast<double>(k + 1));
    }
    // D(|beta| e^{i theta}) = e^{i theta n} D(|beta|) e^{-i theta n}.
    CMatrix d = exp_tridiagonal_generator(sub, std::abs(beta), cutoff + 1);
    const double theta = std::arg(beta);
    for (Eigen::Index k = 0; k <= cutoff; ++k) {
        for (Eigen::Index j = 0; j <= cutoff; ++j) {
            d(j, k) *= std::polar(1.0, theta * static_cast<double>(j - k));
        }
    }
    return d;
}

CMatrix truncated_generator_displacement(Complex beta, int cutoff) {
    const Eigen::Index d = cutoff + 1;
    CMatrix gen = CMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        double s = std::sqrt(static_cast<double>(n));
        gen(n, n - 1) += beta * s;             // beta a^dag
        gen(n - 1, n) -= std::conj(beta) * s;  // -beta* a
    }
    return gen.exp();
}

namespace {

void check_displacement_leak(double in_norm2, double out_norm2, std::size_t mode, int cutoff) {
    const double leak = in_norm2 > 0.0 ? (in_norm2 - out_norm2) / in_norm2 : 0.0;
    if (std::abs(leak) > kUnitaryTolerance) {
        std::ostringstream msg;
        msg << "displacement on mode " << mode << " leaks " << leak << " of the norm past cutoff " << cutoff;
        throw CutoffTooSmall(msg.str());
    }
}

}  // namespace

PureFockState displace(const PureFockState &state, std::size_t mode, const CMatrix &displacement) {
    PureFockState out = apply_mode_operator(state, mode, displacement);
    check_displacement_leak(state.norm_squared(), out.norm_squared(), mode, state.cutoffs()[mode]);
    return PureFockState(out.cutoffs(), out.amplitudes(), state.norm_tracking());
}

MixedState displace(const MixedState &state, std::size_t mode, const CMatrix &displacement) {
    std::vector<PureFockState> out;
    double in_norm2 = 0.0;
    double out_norm2 = 0.0;
    for (const auto &c : state.components()) {
        PureFockState d = apply_mode_operator(c, mode, displacement);
        in_norm2 += c.norm_squared();
        out_norm2 += d.norm_squared();
        out.emplace_back(d.cutoffs(), d.amplitudes(), c.norm_tracking());
    }
    check_displacement_leak(in_norm2, out_norm2, mode, state.cutoffs().at(mode));
    return MixedState(std::move(out));
}

PureFockState displace(const PureFockState &state, std::size_t mode, Complex beta) {
    check_mode(state, mode);
    return displace(state, mode, displacement_matrix(beta, state.cutoffs()[mode]));
}

PureFockState annihilate(const PureFockState &state, std::size_t mode) {
    check_mode(state, mode);
    const Eigen::Index d = state.cutoffs()[mode] + 1;
    CMatrix a = CMatrix::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    PureFockState out = apply_mode_operator(state, mode, a);
    const double in_norm = state.norm();
    const double ratio = in_norm > 0.0 ? out.norm() / in_norm : 0.0;
    return PureFockState(out.cutoffs(), out.amplitudes(), state.norm_tracking() * ratio);
}

// ---------------------------------------------------------------------------
// Beam splitter

BeamSplitter::BeamSplitter(int cutoff_a, int cutoff_b, double t) : cutoff_a_(cutoff_a), cutoff_b_(cutoff_b), t_(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
    }
    const double theta = std::acos(t);
    const int n_max = cutoff_a + cutoff_b;
    blocks_.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        // Generator a^dag b - a b^dag on span{|k, n-k>}, k photons in mode a.
        Eigen::VectorXd sub(n);
        for (int k = 0; k < n; ++k) {
            sub(k) = std::sqrt(static_cast<double>((k + 1) * (n - k)));
        }
        blocks_.push_back(exp_tridiagonal_generator(sub, theta, n + 1).real());
    }
}

CVector BeamSplitter::transform(const PureFockState &state, std::size_t mode_a, std::size_t mode_b) const {
    check_mode(state, mode_a);
    check_mode(state, mode_b);
    if (mode_a == mode_b) {
        throw std::invalid_argument("beam splitter needs two distinct modes");
    }
    if (state.cutoffs()[mode_a] != cutoff_a_ || state.cutoffs()[mode_b] != cutoff_b_) {
        throw std::invalid_argument("beam splitter built for different cutoffs");
    }
    const std::size_t sa = state.stride(mode_a);
    const std::size_t sb = state.stride(mode_b);
    const std::size_t da = static_cast<std::size_t>(cutoff_a_) + 1;
    const std::size_t db = static_cast<std::size_t>(cutoff_b_) + 1;
    const CVector &in = state.amplitudes();
    CVector out = CVector::Zero(in.size());

    std::vector<Complex> gathered;
    for (std::size_t base = 0; base < state.dimension(); ++base) {
        if ((base / sa) % da != 0 || (base / sb) % db != 0) {
            continue;
        }
        for (int n = 0; n <= cutoff_a_ + cutoff_b_; ++n) {
            const int k_lo = std::max(0, n - cutoff_b_);
            const int k_hi = std::min(n, cutoff_a_);
            const Eigen::MatrixXd &u = blocks_[static_cast<std::size_t>(n)];
            gathered.assign(static_cast<std::size_t>(k_hi - k_lo) + 1, 0.0);
            bool any = false;
            for (int k = k_lo; k <= k_hi; ++k) {
                Complex v = in(static_cast<Eigen::Index>(base + k * sa + (n - k) * sb));
                gathered[static_cast<std::size_t>(k - k_lo)] = v;
                any = any || v != 0.0;
            }
            if (!any) {
                continue;
            }
            // Outputs with k' outside [k_lo, k_hi] leave the truncated space.
            for (int kp = k_lo; kp <= k_hi; ++kp) {
                Complex acc = 0.0;
                for (int k = k_lo; k <= k_hi; ++k) {
                    acc += u(kp, k) * gathered[static_cast<std::size_t>(k - k_lo)];
                }
                out(static_cast<Eigen::Index>(base + kp * sa + (n - kp) * sb)) = acc;
            }
        }
    }
    return out;
}

namespace {

void check_leak(double in_norm2, double out_norm2, std::size_t mode_a, std::size_t mode_b) {
    if (in_norm2 > 0.0 && (in_norm2 - out_norm2) > kUnitaryTolerance * in_norm2) {
        std::ostringstream msg;
        msg << "beam splitter on modes (" << mode_a << ", " << mode_b << ") leaks "
            << (in_norm2 - out_norm2) / in_norm2 << " of the norm past the cutoffs";
        throw CutoffTooSmall(msg.str());
    }
}

}  // namespace

PureFockState BeamSplitter::apply(const PureFockState &state, std::size_t mode_a, std::size_t mode_b) const {
    CVector out = transform(state, mode_a, mode_b);
    check_leak(state.norm_squared(), out.squaredNorm(), mode_a, mode_b);
    return PureFockState(state.cutoffs(), std::move(out), state.norm_tracking());
}

MixedState BeamSplitter::apply(const MixedState &state, std::size_t mode_a, std::size_t mode_b) const {
    std::vector<PureFockState> out;
    double in_norm2 = 0.0;
    double out_norm2 = 0.0;
    for (const auto &c : state.components()) {
        CVector v = transform(c, mode_a, mode_b);
        in_norm2 += c.norm_squared();
        out_norm2 += v.squaredNorm();
        out.emplace_back(c.cutoffs(), std::move(v), c.norm_tracking());
    }
    check_leak(in_norm2, out_norm2, mode_a, mode_b);
    return MixedState(std::move(out));
}

PureFockState beamsplitter(const PureFockState &state, std::size_t mode_a, std::size_t mode_b, double t) {
    check_mode(state, mode_a);
    check_mode(state, mode_b);
    return BeamSplitter(state.cutoffs()[mode_a], state.cutoffs()[mode_b], t).apply(state, mode_a, mode_b);
}

// ---------------------------------------------------------------------------

PureFockState tensor(const PureFockState &a, const PureFockState &b) {
    std::vector<int> cutoffs = a.cutoffs();
    cutoffs.insert(cutoffs.end(), b.cutoffs().begin(), b.cutoffs().end());
    checked_dimension(cutoffs);
    const Eigen::Index db = static_cast<Eigen::Index>(b.dimension());
    CVector out(static_cast<Eigen::Index>(a.dimension()) * db);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dimension()); ++i) {
        out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    }
    return PureFockState(std::move(cutoffs), std::move(out), a.norm_tracking() * b.norm_tracking());
}

DensityOperator tensor(const DensityOperator &a, const DensityOperator &b) {
    std::vector<int> cutoffs = a.cutoffs();
    cutoffs.insert(cutoffs.end(), b.cutoffs().begin(), b.cutoffs().end());
    checked_dimension(cutoffs);
    const Eigen::Index da = static_cast<Eigen::Index>(a.dimension());
    const Eigen::Index db = static_cast<Eigen::Index>(b.dimension());
    CMatrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    return DensityOperator(std::move(cutoffs), std::move(out));
}

PureFockState match_cutoffs(const PureFockState &state, std::span<const int> cutoffs) {
    return state.padded(cutoffs);
}

namespace {

std::vector<int> common_cutoffs(const std::vector<int> &a, const std::vector<int> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("states have different numbers of modes");
    }
    std::vector<int> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = std::max(a[k], b[k]);
    }
    return out;
}

}  // namespace

Complex overlap(const PureFockState &a, const PureFockState &b) {
    if (a.cutoffs() == b.cutoffs()) {
        return a.amplitudes().dot(b.amplitudes());
    }
    auto common = common_cutoffs(a.cutoffs(), b.cutoffs());
    return a.padded(common).amplitudes().dot(b.padded(common).amplitudes());
}

double fidelity(const PureFockState &target, const PureFockState &actual) {
    const double nt = target.norm_squared();
    const double na = actual.norm_squared();
    if (nt < kZeroNorm * kZeroNorm || na < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("fidelity of a zero-norm state");
    }
    return std::norm(overlap(target, actual)) / (nt * na);
}

double fidelity(const PureFockState &target, const DensityOperator &actual) {
    const double nt = target.norm_squared();
    const double tr = actual.trace();
    if (nt < kZeroNorm * kZeroNorm || tr < kZeroNorm) {
        throw ZeroNorm("fidelity of a zero-norm state");
    }
    PureFockState t = target.padded(common_cutoffs(target.cutoffs(), actual.cutoffs()));
    if (t.cutoffs() != actual.cutoffs()) {
        throw std::invalid_argument("density operator cutoffs are smaller than the target's");
    }
    const Complex v = t.amplitudes().dot(actual.matrix() * t.amplitudes());
    return v.real() / (nt * tr);
}

double fidelity(const PureFockState &target, const MixedState &actual) {
    const double nt = target.norm_squared();
    const double tr = actual.trace();
    if (nt < kZeroNorm * kZeroNorm || tr < kZeroNorm) {
        throw ZeroNorm("fidelity of a zero-norm state");
    }
    double sum = 0.0;
    for (const auto &c : actual.components()) {
        sum += std::norm(overlap(target, c));
    }
    return sum / (nt * tr);
}

}  // namespace catgate
