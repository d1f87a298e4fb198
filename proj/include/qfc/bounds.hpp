#ifndef QFC_BOUNDS_HPP
#define QFC_BOUNDS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "qfc/ints.hpp"
#include "qfc/state.hpp"

namespace qfc {

/// Volume of a state with n questions remaining:
///   V_n(c) = sum_i c_i * sum_{l=0}^{i} C(n,l) (q-1)^l.
/// Exact. Conserved across reductions; V_n(c) <= q^n is necessary (not
/// sufficient) for the state to be winnable.
Int volume(const State& c, int n, int q);

/// V_n(c) <= q^n.
bool volume_bound_holds(const State& c, int n, int q);

/// V_n(c) == sum_j V_{n-1}(x^j) for the reduction of c under p. Holds for
/// every valid reduction; exposed for the CLI verify command and property
/// tests. Propagates partition validation errors.
bool conservation_check(const State& c, const Partition& p, int n);

/// Every translated volume bound for the initial state with M messages:
///   V_{n-2m}(T^m I) <= q^{n-2m}  for all 0 <= m <= e.
/// Requires n >= 2e (returns false below that). The m = e case specializes to
/// M <= q^{n-2e}.
bool translated_volume_bounds(const Int& M, int e, int q, int n);

/// Smallest n for which all translated volume bounds hold: a lower bound on
/// any admissible block length.
int min_blocklength_converse(const Int& M, int e, int q);

/// q-ary entropy x log_q(q-1) - x log_q x - (1-x) log_q(1-x), with the
/// continuity convention 0 log 0 = 0. Domain [0,1].
double hq(double x, int q);

// Asymptotic rate-region curves in the (f, R) plane, f = e/n.

/// Converse from the plain volume bound: R <= 1 - H_q(f).
double curve_volume(double f, int q);

/// Achievable line of the recursive construction: R <= (1-2f) log_q(q-1).
/// Hits zero at f = 1/2 and is tangent to curve_volume at f = 1/q.
double curve_construction(double f, int q);

/// Left end of the translation-curve validity region,
/// 2 / (q^2 + q sqrt(q^2-4)). Requires q >= 3.
double translation_region_start(int q);

/// Converse from the family of translated volume bounds, defined on
/// [translation_region_start(q), 1/2] and absent outside. The family
/// includes the untranslated (m = 0) member, i.e. the plain volume bound,
/// so the returned value is the minimum of the optimized-translation line
///   (1+2b)(1-2f)(1 - H_q(f0)),  b = 2/(q^2-4+q sqrt(q^2-4)), f0 = region start,
/// and curve_volume(f). Throws UnsupportedAlphabet for q = 2, where the
/// formula degenerates (a different translation law applies there).
std::optional<double> curve_translation(double f, int q);

struct RateRegionPoint {
    double f = 0.0;
    std::optional<double> r_volume;
    std::optional<double> r_translation;
    std::optional<double> r_construction;
};

/// One point per grid value. Grid must lie in [0, 1/2].
std::vector<RateRegionPoint> emit_rate_region(int q, const std::vector<double>& grid);

/// CSV with header "f,R_volume,R_translation,R_construction"; absent values
/// render as empty fields; '.' decimal point regardless of locale; rows follow
/// the grid order.
void write_rate_region_csv(std::ostream& out, const std::vector<RateRegionPoint>& points);

}  // namespace qfc

#endif
