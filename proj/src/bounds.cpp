#include "qfc/bounds.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "qfc/errors.hpp"

namespace qfc {

namespace {

// Prefix weights w_i = sum_{l=0}^{i} C(n,l)(q-1)^l for i = 0..dim-1.
std::vector<Int> volume_weights(int n, int q, int dim) {
    std::vector<Int> w(static_cast<size_t>(dim));
    Int acc = 0;
    Int term = 1;  // C(n,0)(q-1)^0
    for (int l = 0; l < dim; ++l) {
        if (l > 0) {
            // C(n,l) = C(n,l-1) * (n-l+1) / l, zero once l exceeds n.
            term = (l > n) ? Int(0) : term * (n - l + 1) / l * (q - 1);
        }
        acc += term;
        w[static_cast<size_t>(l)] = acc;
    }
    return w;
}

}  // namespace

Int volume(const State& c, int n, int q) {
    if (n < 0) throw InvalidArgument("volume: n >= 0 required");
    if (q < 2) throw InvalidArgument("volume: q >= 2 required");
    const auto w = volume_weights(n, q, c.dimension());
    Int v = 0;
    for (int i = 0; i < c.dimension(); ++i) v += c.count(i) * w[static_cast<size_t>(i)];
    return v;
}

bool volume_bound_holds(const State& c, int n, int q) {
    return volume(c, n, q) <= ipow(q, n);
}

bool conservation_check(const State& c, const Partition& p, int n) {
    if (n < 1) throw InvalidArgument("conservation_check: n >= 1 required");
    const int q = p.q();
    Reduction xs = reduce(c, p);
    Int sum = 0;
    for (const State& x : xs.states) sum += volume(x, n - 1, q);
    return sum == volume(c, n, q);
}

bool translated_volume_bounds(const Int& M, int e, int q, int n) {
    if (M < 1) throw InvalidArgument("translated_volume_bounds: M >= 1 required");
    if (q < 2) throw InvalidArgument("translated_volume_bounds: q >= 2 required");
    if (n < 0 || n < 2 * e) return false;
    for (int m = 0; m <= e; ++m) {
        // T^m I has all M elements at capacity e-m.
        const int nn = n - 2 * m;
        const auto w = volume_weights(nn, q, e - m + 1);
        if (M * w.back() > ipow(q, nn)) return false;
    }
    return true;
}

int min_blocklength_converse(const Int& M, int e, int q) {
    for (int n = 0;; ++n) {
        if (translated_volume_bounds(M, e, q, n)) return n;
    }
}

double hq(double x, int q) {
    if (q < 2) throw InvalidArgument("hq: q >= 2 required");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("hq: x in [0,1] required");
    const double lq = std::log(static_cast<double>(q));
    double h = x * std::log(static_cast<double>(q - 1)) / lq;
    if (x > 0.0) h -= x * std::log(x) / lq;
    if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x) / lq;
    return h;
}

double curve_volume(double f, int q) { return 1.0 - hq(f, q); }

double curve_construction(double f, int q) {
    if (q < 2) throw InvalidArgument("curve_construction: q >= 2 required");
    return (1.0 - 2.0 * f) * std::log(static_cast<double>(q - 1)) /
           std::log(static_cast<double>(q));
}

double translation_region_start(int q) {
    if (q == 2) throw UnsupportedAlphabet("translation curve: q = 2 follows a different law");
    if (q < 2) throw InvalidArgument("translation_region_start: q >= 2 required");
    const double a = static_cast<double>(q) * q - 4.0;
    return 2.0 / (static_cast<double>(q) * q + q * std::sqrt(a));
}

std::optional<double> curve_translation(double f, int q) {
    const double f0 = translation_region_start(q);  // throws for q = 2
    if (f < f0 || f > 0.5) return std::nullopt;
    const double a = static_cast<double>(q) * q - 4.0;
    const double b = 2.0 / (a + q * std::sqrt(a));
    const double line = (1.0 + 2.0 * b) * (1.0 - 2.0 * f) * (1.0 - hq(f0, q));
    // The translated bound family contains the untranslated member (m = 0),
    // so the volume curve caps the optimized-translation line.
    return std::min(line, curve_volume(f, q));
}

std::vector<RateRegionPoint> emit_rate_region(int q, const std::vector<double>& grid) {
    if (q < 2) throw InvalidArgument("emit_rate_region: q >= 2 required");
    std::vector<RateRegionPoint> points;
    points.reserve(grid.size());
    for (double f : grid) {
        if (!(f >= 0.0 && f <= 0.5)) throw InvalidArgument("emit_rate_region: grid value outside [0, 1/2]");
        RateRegionPoint pt;
        pt.f = f;
        pt.r_volume = curve_volume(f, q);
        pt.r_construction = curve_construction(f, q);
        if (q >= 3) pt.r_translation = curve_translation(f, q);
        points.push_back(pt);
    }
    return points;
}

namespace {

// Locale-independent; enough digits to round-trip a double.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace

void write_rate_region_csv(std::ostream& out, const std::vector<RateRegionPoint>& points) {
    out << "f,R_volume,R_translation,R_construction\n";
    for (const auto& pt : points) {
        out << format_double(pt.f) << ',';
        if (pt.r_volume) out << format_double(*pt.r_volume);
        out << ',';
        if (pt.r_translation) out << format_double(*pt.r_translation);
        out << ',';
        if (pt.r_construction) out << format_double(*pt.r_construction);
        out << '\n';
    }
}

}  // namespace qfc
