#pragma once

#include <vector>

#include "eqdeg/burnside.hpp"
#include "eqdeg/rep.hpp"

namespace eqdeg {

// deg_V = G-deg(-id, B(V)) via the recurrence over classes, largest first:
//   n_H = ((-1)^{dim V^H} - sum_{(K)>(H)} n_K n(H,K) |W(K)|) / |W(H)|.
// Every division must be exact (NonIntegerCoefficient otherwise).
// order_variant selects the linear extension used (the result is order
// independent; tests compute with both).
BurnsideElement basic_degree(const RealIrrep& rep, const CcsTable& table,
                             int order_variant = 0);

// Degree of a linear equivariant isomorphism with negative-spectrum
// multiplicities m_i per irreducible: product of deg_{V_i}^{m_i mod 2}
// (each basic degree is an involution).
BurnsideElement linear_iso_degree(
    const std::vector<std::pair<const RealIrrep*, long long>>& assignments,
    const CcsTable& table);

// Classes realized as isotropy groups of points of W = ⊕ reps, away from 0.
// Exact criterion: dim W^H > 0 and every minimal overgroup drops the fixed
// dimension (a real vector space is never a finite union of proper
// subspaces, so a generic point of W^H then has isotropy exactly H).
std::vector<int> orbit_types(const std::vector<const RealIrrep*>& reps,
                             const CcsTable& table);

// Maximal elements of orbit_types under the table's partial order.
std::vector<int> maximal_orbit_types(const std::vector<const RealIrrep*>& reps,
                                     const CcsTable& table);

}  // namespace eqdeg
