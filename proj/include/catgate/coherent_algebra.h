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

#ifndef CATGATE_COHERENT_ALGEBRA_H
#define CATGATE_COHERENT_ALGEBRA_H

#include <cstddef>
#include <span>
#include <vector>

#include "catgate/fock_state.h"
#include "catgate/measurement.h"

namespace catgate {

/// <a|b> = exp(a* b - |a|^2/2 - |b|^2/2).
Complex coherent_overlap(Complex a, Complex b);

/// <n|b> for a coherent state |b>.
Complex fock_coherent_overlap(int n, Complex b);

/// <q|b> for the quadrature eigenstate of x = (a + a^dag)/sqrt(2) or
/// p = (a - a^dag)/(i sqrt(2)):
///   <x=q|b> = pi^{-1/4} exp(-q^2/2 + sqrt(2) b q - b^2/2 - |b|^2/2)
///   <p=q|b> = pi^{-1/4} exp(-q^2/2 - i sqrt(2) b q + b^2/2 - |b|^2/2)
Complex quadrature_coherent_overlap(Quadrature quadrature, double q, Complex b);

/// Superposition over the nonorthogonal product basis {|+alpha>, |-alpha>}^n,
/// n in {1, 2}.
///
/// Coefficients are indexed by sign strings with mode 0 as the most
/// significant bit and bit value 0 for +alpha, 1 for -alpha. For two modes
/// the order is therefore (c11, c10, c01, c00) in the usual labelling where
/// "1" marks +alpha and "0" marks -alpha.
class CoherentRegister {
   public:
    CoherentRegister(Complex alpha, std::vector<Complex> coeffs);

    Complex alpha() const { return alpha_; }
    int n_modes() const { return n_modes_; }
    const std::vector<Complex> &coeffs() const { return coeffs_; }
    Complex coeff(std::size_t index) const { return coeffs_.at(index); }

    /// +1 if basis index `index` holds +alpha on `mode`, -1 otherwise.
    int sign(std::size_t index, int mode) const;

    /// u^dag G u with the Gram matrix of the basis.
    double norm_squared() const;
    bool is_normalized(double tol = 1e-12) const;
    /// ZeroNorm when the state lies in the Gram kernel.
    CoherentRegister normalized() const;
    CoherentRegister scaled(Complex factor) const;

   private:
    Complex alpha_;
    int n_modes_;
    std::vector<Complex> coeffs_;
};

/// x|alpha> + y|-alpha>.
struct CoherentQubit {
    Complex alpha;
    Complex x;
    Complex y;

    CoherentRegister reg() const { return CoherentRegister(alpha, {x, y}); }
    static CoherentQubit from(const CoherentRegister &r);

    /// |x|^2 + |y|^2 + 2 Re(x* y <alpha|-alpha>).
    double norm_squared() const { return reg().norm_squared(); }
    bool normalized(double tol = 1e-12) const { return reg().is_normalized(tol); }
    CoherentQubit normalized_copy() const { return from(reg().normalized()); }
};

/// Output of a non-unitary ideal map together with ||out||^2 / ||in||^2.
template <typename T>
struct Mapped {
    T state;
    double conditional_norm_gain;
};

/// Gram matrix of the 2^n basis states: products of per-mode overlaps
/// <s alpha | s' alpha>, i.e. 1 or exp(-2|alpha|^2).
CMatrix gram(Complex alpha, int n_modes);

/// u^dag G v.
Complex inner(const CoherentRegister &u, const CoherentRegister &v);
/// |<u|v>|^2 / (<u|u><v|v>). ZeroNorm if either norm^2 is below 1e-28.
double fidelity_cb(const CoherentRegister &u, const CoherentRegister &v);

/// x -> x (alpha + gamma), y -> y (-alpha + gamma): D(-gamma) a D(gamma).
Mapped<CoherentQubit> ideal_phase_gate(const CoherentQubit &q, Complex gamma);

/// (a + b + gamma2)(a + b + gamma1) on a two-mode register. Basis ket with
/// total amplitude S = (s1 + s2) alpha picks up (S + gamma1)(S + gamma2).
Mapped<CoherentRegister> ideal_cphase(const CoherentRegister &r, Complex gamma1, Complex gamma2);

/// (x, y) -> (x + y, x - y), unnormalized.
CoherentQubit ideal_hadamard_target(const CoherentQubit &q);

/// Contracts `mode` of a two-mode register with a bra whose overlaps with
/// |+alpha> and |-alpha> are `bra_plus` and `bra_minus`.
CoherentQubit project_register_mode(const CoherentRegister &r, int mode, Complex bra_plus, Complex bra_minus);

/// Product of two single-mode registers with the same alpha.
CoherentRegister tensor(const CoherentRegister &a, const CoherentRegister &b);

/// Fock-space image. An empty `cutoffs` uses the default cutoff policy for |alpha|.
PureFockState to_fock(const CoherentRegister &r, std::span<const int> cutoffs = {});
PureFockState to_fock(const CoherentQubit &q, std::span<const int> cutoffs = {});

}  // namespace catgate

#endif
