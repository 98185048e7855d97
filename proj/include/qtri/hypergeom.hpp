#pragma once

namespace qtri {

// Exact probability that a fixed pn-subset and a uniformly random qn-subset
// of [n] are disjoint: C(n(1-p), nq) / C(n, nq), evaluated in log space.
// Requires p + q < 1; pn and qn are rounded to integers.
double hypergeom_disjoint(int n, double p, double q);

}  // namespace qtri
