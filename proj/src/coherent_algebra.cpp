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

#include "catgate/coherent_algebra.h"

#include <cmath>
#include <numbers>

#include "catgate/errors.h"
#include "catgate/fock_ops.h"

namespace catgate {

Complex coherent_overlap(Complex a, Complex b) {
    return std::exp(std::conj(a) * b - 0.5 * std::norm(a) - 0.5 * std::norm(b));
}

Complex fock_coherent_overlap(int n, Complex b) {
    if (n < 0) {
        throw std::invalid_argument("negative Fock index");
    }
    if (b == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double mag = std::exp(-0.5 * std::norm(b) + n * std::log(std::abs(b)) - 0.5 * std::lgamma(n + 1.0));
    return std::polar(mag, n * std::arg(b));
}

Complex quadrature_coherent_overlap(Quadrature quadrature, double q, Complex b) {
    const double pref = std::pow(std::numbers::pi, -0.25);
    const double sqrt2 = std::sqrt(2.0);
    if (quadrature == Quadrature::X) {
        return pref * std::exp(-0.5 * q * q + sqrt2 * b * q - 0.5 * b * b - 0.5 * std::norm(b));
    }
    const Complex i(0.0, 1.0);
    return pref * std::exp(-0.5 * q * q - i * sqrt2 * b * q + 0.5 * b * b - 0.5 * std::norm(b));
}

// ---------------------------------------------------------------------------

CoherentRegister::CoherentRegister(Complex alpha, std::vector<Complex> coeffs) : alpha_(alpha), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 2) {
        n_modes_ = 1;
    } else if (coeffs_.size() == 4) {
        n_modes_ = 2;
    } else {
        throw std::invalid_argument("coherent register supports one or two modes");
    }
}

int CoherentRegister::sign(std::size_t index, int mode) const {
    const int bit = n_modes_ - 1 - mode;
    return ((index >> bit) & 1U) ? -1 : 1;
}

double CoherentRegister::norm_squared() const { return inner(*this, *this).real(); }

bool CoherentRegister::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

CoherentRegister CoherentRegister::normalized() const {
    const double n2 = norm_squared();
    if (n2 < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("coherent-basis state has zero norm");
    }
    return scaled(1.0 / std::sqrt(n2));
}

CoherentRegister CoherentRegister::scaled(Complex factor) const {
    std::vector<Complex> c = coeffs_;
    for (auto &v : c) {
        v *= factor;
    }
    return CoherentRegister(alpha_, std::move(c));
}

CoherentQubit CoherentQubit::from(const CoherentRegister &r) {
    if (r.n_modes() != 1) {
        throw std::invalid_argument("qubit view needs a single-mode register");
    }
    return {r.alpha(), r.coeff(0), r.coeff(1)};
}

CMatrix gram(Complex alpha, int n_modes) {
    if (n_modes != 1 && n_modes != 2) {
        throw std::invalid_argument("gram supports one or two modes");
    }
    const Eigen::Index dim = Eigen::Index{1} << n_modes;
    const Complex same = coherent_overlap(alpha, alpha);
    const Complex diff = coherent_overlap(alpha, -alpha);
    CMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            Complex v = 1.0;
            for (int m = 0; m < n_modes; ++m) {
                const bool differ = ((i >> m) & 1) != ((j >> m) & 1);
                v *= differ ? diff : same;
            }
            g(i, j) = v;
        }
    }
    return g;
}

Complex inner(const CoherentRegister &u, const CoherentRegister &v) {
    if (u.n_modes() != v.n_modes() || u.alpha() != v.alpha()) {
        throw std::invalid_argument("inner product needs matching alpha and mode count");
    }
    const CMatrix g = gram(u.alpha(), u.n_modes());
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
        for (std::size_t j = 0; j < v.coeffs().size(); ++j) {
            acc += std::conj(u.coeff(i)) * g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * v.coeff(j);
        }
    }
    return acc;
}

double fidelity_cb(const CoherentRegister &u, const CoherentRegister &v) {
    const double nu = u.norm_squared();
    const double nv = v.norm_squared();
    if (nu < kZeroNorm * kZeroNorm || nv < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("fidelity of a zero-norm coherent-basis state");
    }
    return std::norm(inner(u, v)) / (nu * nv);
}

namespace {

template <typename T>
double norm_gain(const T &out, const T &in) {
    const double n_in = in.norm_squared();
    if (n_in < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("ideal map applied to a zero-norm state");
    }
    return out.norm_squared() / n_in;
}

}  // namespace

Mapped<CoherentQubit> ideal_phase_gate(const CoherentQubit &q, Complex gamma) {
    CoherentQubit out{q.alpha, q.x * (q.alpha + gamma), q.y * (-q.alpha + gamma)};
    return {out, norm_gain(out, q)};
}

Mapped<CoherentRegister> ideal_cphase(const CoherentRegister &r, Complex gamma1, Complex gamma2) {
    if (r.n_modes() != 2) {
        throw std::invalid_argument("ideal_cphase needs a two-mode register");
    }
    std::vector<Complex> c(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex s = static_cast<double>(r.sign(i, 0) + r.sign(i, 1)) * r.alpha();
        c[i] = r.coeff(i) * (s + gamma1) * (s + gamma2);
    }
    CoherentRegister out(r.alpha(), std::move(c));
    return {out, norm_gain(out, r)};
}

CoherentQubit ideal_hadamard_target(const CoherentQubit &q) { return {q.alpha, q.x + q.y, q.x - q.y}; }

CoherentQubit project_register_mode(const CoherentRegister &r, int mode, Complex bra_plus, Complex bra_minus) {
    if (r.n_modes() != 2 || (mode != 0 && mode != 1)) {
        throw std::invalid_argument("project_register_mode needs a two-mode register");
    }
    Complex kept[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const Complex w = r.sign(i, mode) > 0 ? bra_plus : bra_minus;
        const int other = 1 - mode;
        kept[r.sign(i, other) > 0 ? 0 : 1] += w * r.coeff(i);
    }
    return {r.alpha(), kept[0], kept[1]};
}

CoherentRegister tensor(const CoherentRegister &a, const CoherentRegister &b) {
    if (a.n_modes() != 1 || b.n_modes() != 1 || a.alpha() != b.alpha()) {
        throw std::invalid_argument("register tensor needs two single-mode registers with equal alpha");
    }
    return CoherentRegister(a.alpha(), {a.coeff(0) * b.coeff(0), a.coeff(0) * b.coeff(1), a.coeff(1) * b.coeff(0),
                                        a.coeff(1) * b.coeff(1)});
}

PureFockState to_fock(const CoherentRegister &r, std::span<const int> cutoffs) {
    std::vector<int> cut(cutoffs.begin(), cutoffs.end());
    if (cut.empty()) {
        cut.assign(static_cast<std::size_t>(r.n_modes()), default_cutoff(std::abs(r.alpha())));
    }
    if (cut.size() != static_cast<std::size_t>(r.n_modes())) {
        throw std::invalid_argument("to_fock: one cutoff per mode required");
    }
    std::vector<PureFockState> plus, minus;
    for (int m = 0; m < r.n_modes(); ++m) {
        plus.push_back(coherent_state(r.alpha(), cut[static_cast<std::size_t>(m)]));
        minus.push_back(coherent_state(-r.alpha(), cut[static_cast<std::size_t>(m)]));
    }
    CVector acc = CVector::Zero(static_cast<Eigen::Index>(checked_dimension(cut)));
    for (std::size_t i = 0; i < r.coeffs().size(); ++i) {
        if (r.coeff(i) == 0.0) {
            continue;
        }
        PureFockState term = PureFockState::scalar(r.coeff(i));
        for (int m = 0; m < r.n_modes(); ++m) {
            term = tensor(term, r.sign(i, m) > 0 ? plus[static_cast<std::size_t>(m)] : minus[static_cast<std::size_t>(m)]);
        }
        acc += term.amplitudes();
    }
    return PureFockState(std::move(cut), std::move(acc));
}

PureFockState to_fock(const CoherentQubit &q, std::span<const int> cutoffs) { return to_fock(q.reg(), cutoffs); }

}  // namespace catgate
