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

#ifndef CATGATE_MEASUREMENT_H
#define CATGATE_MEASUREMENT_H

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "catgate/fock_state.h"

namespace catgate {

/// Conditioned state of the unmeasured modes plus the weight of the outcome.
/// For discrete outcomes `weight` is a probability, for quadrature outcomes it
/// is a probability density. The state is left unnormalized with
/// norm^2 (or trace) equal to weight times the incoming norm^2 (or trace).
template <typename State>
struct Outcome {
    State state;
    double weight;
};

enum class Quadrature { X, P };

std::string_view quadrature_name(Quadrature q);

/// Hermite functions psi_0(q) .. psi_n_max(q), computed by the stable
/// three-term recurrence.
std::vector<double> hermite_functions(double q, int n_max);

/// Row vector <q|n> for n = 0..cutoff under x = (a + a^dag)/sqrt(2),
/// p = (a - a^dag)/(i sqrt(2)): <x=q|n> = psi_n(q), <p=q|n> = (-i)^n psi_n(q).
CVector quadrature_bra(Quadrature quadrature, double q, int cutoff);

/// Contracts one mode with the bra `bra` (length N+1): returns sum_n bra[n] psi(.., n, ..).
PureFockState contract_mode(const PureFockState &state, std::size_t mode, const CVector &bra);
DensityOperator contract_mode(const DensityOperator &rho, std::size_t mode, const CVector &bra);

Outcome<PureFockState> project_fock(const PureFockState &state, std::size_t mode, int n);
Outcome<DensityOperator> project_fock(const DensityOperator &rho, std::size_t mode, int n);
Outcome<MixedState> project_fock(const MixedState &state, std::size_t mode, int n);

/// On/off detector {1 - |0><0|, |0><0|}; keeps the click branch and traces out
/// the measured mode. The ensemble form returns one component per n >= 1.
Outcome<MixedState> apd_click_components(const PureFockState &state, std::size_t mode);
Outcome<MixedState> apd_click_components(const MixedState &state, std::size_t mode);
Outcome<DensityOperator> apd_click(const PureFockState &state, std::size_t mode);
Outcome<DensityOperator> apd_click(const DensityOperator &rho, std::size_t mode);
/// The complementary no-click branch (|0><0| on the mode).
Outcome<DensityOperator> apd_no_click(const DensityOperator &rho, std::size_t mode);

/// Projection onto the improper quadrature eigenstate <q|; `weight` is the
/// probability density at q.
Outcome<PureFockState> project_quadrature(const PureFockState &state, std::size_t mode,
                                          Quadrature quadrature, double q);
Outcome<DensityOperator> project_quadrature(const DensityOperator &rho, std::size_t mode,
                                            Quadrature quadrature, double q);
Outcome<MixedState> project_quadrature(const MixedState &state, std::size_t mode, Quadrature quadrature,
                                       double q);

/// Homodyne acceptance window [q - w, q + w]: the conditioned state integrated
/// over the window with 21-point composite Simpson quadrature. `weight` is the
/// acceptance probability.
Outcome<MixedState> project_quadrature_window(const MixedState &state, std::size_t mode,
                                              Quadrature quadrature, double q, double half_width);

/// Traces out `mode` from an ensemble, splitting each component by Fock index.
MixedState trace_out(const MixedState &state, std::size_t mode);

DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> modes_to_drop);

}  // namespace catgate

#endif
