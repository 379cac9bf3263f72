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

#include "catgate/measurement.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catgate/fock_ops.h"

namespace catgate {

namespace {

void check_mode(std::size_t num_modes, std::size_t mode) {
    if (mode >= num_modes) {
        throw std::out_of_range("mode index " + std::to_string(mode) + " out of range");
    }
}

CVector fock_bra(int n, int cutoff) {
    if (n < 0 || n > cutoff) {
        throw std::out_of_range("Fock outcome exceeds the mode cutoff");
    }
    CVector bra = CVector::Zero(cutoff + 1);
    bra(n) = 1.0;
    return bra;
}

double relative_weight(double out, double in) { return in > 0.0 ? out / in : 0.0; }

std::vector<int> without_mode(const std::vector<int> &cutoffs, std::size_t mode) {
    std::vector<int> out = cutoffs;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(mode));
    return out;
}

// Applies the contraction to every column of `m`, whose rows live on `cutoffs`.
CMatrix contract_columns(const CMatrix &m, const std::vector<int> &cutoffs, std::size_t mode, const CVector &bra) {
    CMatrix out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        PureFockState col(cutoffs, m.col(c));
        PureFockState r = contract_mode(col, mode, bra);
        if (c == 0) {
            out.resize(static_cast<Eigen::Index>(r.dimension()), m.cols());
        }
        out.col(c) = r.amplitudes();
    }
    return out;
}

}  // namespace

std::string_view quadrature_name(Quadrature q) { return q == Quadrature::X ? "x" : "p"; }

std::vector<double> hermite_functions(double q, int n_max) {
    std::vector<double> psi(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
    psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * q * q);
    if (n_max >= 1) {
        psi[1] = std::sqrt(2.0) * q * psi[0];
    }
    for (int n = 1; n < n_max; ++n) {
        psi[static_cast<std::size_t>(n) + 1] = std::sqrt(2.0 / (n + 1)) * q * psi[static_cast<std::size_t>(n)] -
                                               std::sqrt(static_cast<double>(n) / (n + 1)) * psi[static_cast<std::size_t>(n) - 1];
    }
    return psi;
}

CVector quadrature_bra(Quadrature quadrature, double q, int cutoff) {
    const auto psi = hermite_functions(q, cutoff);
    CVector bra(cutoff + 1);
    // (-i)^n cycles through 1, -i, -1, i.
    static const Complex minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int n = 0; n <= cutoff; ++n) {
        bra(n) = quadrature == Quadrature::X ? Complex(psi[static_cast<std::size_t>(n)])
                                             : minus_i_pow[n % 4] * psi[static_cast<std::size_t>(n)];
    }
    return bra;
}

PureFockState contract_mode(const PureFockState &state, std::size_t mode, const CVector &bra) {
    check_mode(state.num_modes(), mode);
    CMatrix row = bra.transpose();
    PureFockState reduced = apply_mode_operator(state, mode, row);
    // The measured mode now has dimension one; dropping it leaves the layout unchanged.
    return PureFockState(without_mode(state.cutoffs(), mode), reduced.amplitudes(), state.norm_tracking());
}

DensityOperator contract_mode(const DensityOperator &rho, std::size_t mode, const CVector &bra) {
    check_mode(rho.num_modes(), mode);
    // K rho K^dag = (K (K rho)^dag)^dag.
    CMatrix half = contract_columns(rho.matrix(), rho.cutoffs(), mode, bra);
    CMatrix full = contract_columns(half.adjoint(), rho.cutoffs(), mode, bra).adjoint();
    return DensityOperator(without_mode(rho.cutoffs(), mode), std::move(full));
}

Outcome<PureFockState> project_fock(const PureFockState &state, std::size_t mode, int n) {
    check_mode(state.num_modes(), mode);
    PureFockState out = contract_mode(state, mode, fock_bra(n, state.cutoffs()[mode]));
    double w = relative_weight(out.norm_squared(), state.norm_squared());
    return {std::move(out), w};
}

Outcome<DensityOperator> project_fock(const DensityOperator &rho, std::size_t mode, int n) {
    check_mode(rho.num_modes(), mode);
    DensityOperator out = contract_mode(rho, mode, fock_bra(n, rho.cutoffs()[mode]));
    double w = relative_weight(out.trace(), rho.trace());
    return {std::move(out), w};
}

Outcome<MixedState> project_fock(const MixedState &state, std::size_t mode, int n) {
    check_mode(state.cutoffs().size(), mode);
    const CVector bra = fock_bra(n, state.cutoffs()[mode]);
    MixedState out = state.map([&](const PureFockState &c) { return contract_mode(c, mode, bra); });
    double w = relative_weight(out.trace(), state.trace());
    return {std::move(out), w};
}

Outcome<MixedState> apd_click_components(const MixedState &state, std::size_t mode) {
    check_mode(state.cutoffs().size(), mode);
    const int cutoff = state.cutoffs()[mode];
    std::vector<PureFockState> parts;
    for (const auto &c : state.components()) {
        for (int n = 1; n <= cutoff; ++n) {
            PureFockState p = contract_mode(c, mode, fock_bra(n, cutoff));
            if (p.norm_squared() > 0.0) {
                parts.push_back(std::move(p));
            }
        }
    }
    if (parts.empty()) {
        PureFockState zero = contract_mode(state.components().front(), mode, CVector::Zero(cutoff + 1));
        parts.push_back(std::move(zero));
    }
    MixedState out(std::move(parts));
    double w = relative_weight(out.trace(), state.trace());
    return {std::move(out), w};
}

Outcome<MixedState> apd_click_components(const PureFockState &state, std::size_t mode) {
    return apd_click_components(MixedState(state), mode);
}

Outcome<DensityOperator> apd_click(const PureFockState &state, std::size_t mode) {
    auto r = apd_click_components(state, mode);
    return {r.state.to_density(), r.weight};
}

Outcome<DensityOperator> apd_click(const DensityOperator &rho, std::size_t mode) {
    check_mode(rho.num_modes(), mode);
    const std::size_t drop[1] = {mode};
    DensityOperator all = partial_trace(rho, drop);
    DensityOperator vac = contract_mode(rho, mode, fock_bra(0, rho.cutoffs()[mode]));
    DensityOperator out(all.cutoffs(), all.matrix() - vac.matrix());
    double w = relative_weight(out.trace(), rho.trace());
    return {std::move(out), w};
}

Outcome<DensityOperator> apd_no_click(const DensityOperator &rho, std::size_t mode) {
    return project_fock(rho, mode, 0);
}

Outcome<PureFockState> project_quadrature(const PureFockState &state, std::size_t mode, Quadrature quadrature,
                                          double q) {
    check_mode(state.num_modes(), mode);
    PureFockState out = contract_mode(state, mode, quadrature_bra(quadrature, q, state.cutoffs()[mode]));
    double w = relative_weight(out.norm_squared(), state.norm_squared());
    return {std::move(out), w};
}

Outcome<DensityOperator> project_quadrature(const DensityOperator &rho, std::size_t mode, Quadrature quadrature,
                                            double q) {
    check_mode(rho.num_modes(), mode);
    DensityOperator out = contract_mode(rho, mode, quadrature_bra(quadrature, q, rho.cutoffs()[mode]));
    double w = relative_weight(out.trace(), rho.trace());
    return {std::move(out), w};
}

Outcome<MixedState> project_quadrature(const MixedState &state, std::size_t mode, Quadrature quadrature, double q) {
    check_mode(state.cutoffs().size(), mode);
    const CVector bra = quadrature_bra(quadrature, q, state.cutoffs()[mode]);
    MixedState out = state.map([&](const PureFockState &c) { return contract_mode(c, mode, bra); });
    double w = relative_weight(out.trace(), state.trace());
    return {std::move(out), w};
}

Outcome<MixedState> project_quadrature_window(const MixedState &state, std::size_t mode, Quadrature quadrature,
                                              double q, double half_width) {
    if (!(half_width > 0.0)) {
        return project_quadrature(state, mode, quadrature, q);
    }
    check_mode(state.cutoffs().size(), mode);
    constexpr int kIntervals = 20;  // 21 nodes
    const double h = 2.0 * half_width / kIntervals;
    std::vector<PureFockState> parts;
    for (int i = 0; i <= kIntervals; ++i) {
        const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double scale = std::sqrt(w * h / 3.0);
        const CVector bra = quadrature_bra(quadrature, q - half_width + i * h, state.cutoffs()[mode]);
        for (const auto &c : state.components()) {
            parts.push_back(contract_mode(c, mode, bra).scaled(scale));
        }
    }
    MixedState out(std::move(parts));
    double weight = relative_weight(out.trace(), state.trace());
    return {std::move(out), weight};
}

MixedState trace_out(const MixedState &state, std::size_t mode) {
    check_mode(state.cutoffs().size(), mode);
    const int cutoff = state.cutoffs()[mode];
    std::vector<PureFockState> parts;
    for (const auto &c : state.components()) {
        for (int n = 0; n <= cutoff; ++n) {
            PureFockState p = contract_mode(c, mode, fock_bra(n, cutoff));
            if (p.norm_squared() > 0.0) {
                parts.push_back(std::move(p));
            }
        }
    }
    if (parts.empty()) {
        parts.push_back(contract_mode(state.components().front(), mode, CVector::Zero(cutoff + 1)));
    }
    return MixedState(std::move(parts));
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const std::size_t> modes_to_drop) {
    const auto &cutoffs = rho.cutoffs();
    std::vector<bool> drop(cutoffs.size(), false);
    for (std::size_t m : modes_to_drop) {
        check_mode(cutoffs.size(), m);
        drop[m] = true;
    }
    std::vector<int> kept_cutoffs;
    std::size_t kept_dim = 1;
    std::size_t drop_dim = 1;
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (drop[k]) {
            drop_dim *= static_cast<std::size_t>(cutoffs[k]) + 1;
        } else {
            kept_cutoffs.push_back(cutoffs[k]);
            kept_dim *= static_cast<std::size_t>(cutoffs[k]) + 1;
        }
    }
    // groups[d][k] = full index of (kept index k, dropped index d).
    std::vector<std::vector<Eigen::Index>> groups(drop_dim, std::vector<Eigen::Index>(kept_dim));
    std::vector<int> occ(cutoffs.size(), 0);
    for (std::size_t i = 0; i < rho.dimension(); ++i) {
        std::size_t ki = 0;
        std::size_t di = 0;
        for (std::size_t k = 0; k < cutoffs.size(); ++k) {
            if (drop[k]) {
                di = di * (static_cast<std::size_t>(cutoffs[k]) + 1) + static_cast<std::size_t>(occ[k]);
            } else {
                ki = ki * (static_cast<std::size_t>(cutoffs[k]) + 1) + static_cast<std::size_t>(occ[k]);
            }
        }
        groups[di][ki] = static_cast<Eigen::Index>(i);
        for (std::size_t k = cutoffs.size(); k-- > 0;) {
            if (++occ[k] <= cutoffs[k]) {
                break;
            }
            occ[k] = 0;
        }
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kept_dim), static_cast<Eigen::Index>(kept_dim));
    for (const auto &g : groups) {
        out += rho.matrix()(g, g);
    }
    return DensityOperator(std::move(kept_cutoffs), std::move(out));
}

}  // namespace catgate
