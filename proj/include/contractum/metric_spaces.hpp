#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contractum/error.hpp"
#include "contractum/numeric_text.hpp"
#include "contractum/parallel.hpp"
#include "contractum/random.hpp"

namespace contractum {

inline constexpr double default_distance_tolerance = 1e-12;

/// Labeled finite point set with an explicit symmetric distance table.
///
/// The constructor rejects what cannot be a distance at all (non-square,
/// asymmetric, negative or non-finite entries, nonzero diagonal). Zero
/// off-diagonal entries are kept: they are an identity-axiom failure that
/// the validators report rather than a parse error.
class FiniteSpace {
public:
    FiniteSpace() = default;

    FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<double>> distances,
                double tolerance = default_distance_tolerance)
        : labels_(std::move(labels)), tolerance_(tolerance) {
        const std::size_t n = labels_.size();
        if (n == 0)
            throw malformed_input("space has no points");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (labels_[i] == labels_[j])
                    throw malformed_input("duplicate point label '" + labels_[i] + "'");
        if (distances.size() != n)
            throw malformed_input("distance table has " + std::to_string(distances.size()) + " rows for " +
                                  std::to_string(n) + " points");
        table_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (distances[i].size() != n)
                throw malformed_input("distance row for '" + labels_[i] + "' has " +
                                      std::to_string(distances[i].size()) + " entries, expected " +
                                      std::to_string(n));
            for (std::size_t j = 0; j < n; ++j)
                table_[i * n + j] = distances[i][j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double d = table_[i * n + j];
                if (!std::isfinite(d))
                    throw malformed_input("non-finite distance for pair (" + labels_[i] + ", " + labels_[j] + ")");
                if (d < 0.0)
                    throw malformed_input("negative distance for pair (" + labels_[i] + ", " + labels_[j] + ")");
                if (i == j && d != 0.0)
                    throw malformed_input("nonzero self-distance for point '" + labels_[i] + "'");
                if (j > i && std::fabs(d - table_[j * n + i]) > tolerance_)
                    throw malformed_input("asymmetric distance for pair (" + labels_[i] + ", " + labels_[j] +
                                          "): " + format_real(d) + " vs " + format_real(table_[j * n + i]));
            }
        }
        values_.reserve(n);
        for (const auto& label : labels_)
            values_.push_back(try_parse_real(label).value_or(std::numeric_limits<double>::quiet_NaN()));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Numeric value of a label, NaN for non-numeric labels.
    double value(std::size_t i) const { return values_.at(i); }
    double tolerance() const noexcept { return tolerance_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return table_[i * labels_.size() + j]; }
    const double* row(std::size_t i) const noexcept { return table_.data() + i * labels_.size(); }

    /// Index of the point whose numeric label equals value (relative tolerance).
    std::optional<std::size_t> index_of(double value) const {
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (std::fabs(values_[i] - value) <= tolerance_ * std::max(1.0, std::fabs(value)))
                return i;
        return std::nullopt;
    }

    bool contains(double value) const { return index_of(value).has_value(); }

    double distance(double x, double y) const {
        auto i = index_of(x);
        if (!i)
            throw closure_error("value " + format_real(x) + " is not a point of the space");
        auto j = index_of(y);
        if (!j)
            throw closure_error("value " + format_real(y) + " is not a point of the space");
        return (*this)(*i, *j);
    }

    std::string label_of(double value) const {
        if (auto i = index_of(value))
            return labels_[*i];
        return format_real(value);
    }

    /// Off-diagonal pairs (i < j) with zero distance.
    std::vector<std::pair<std::size_t, std::size_t>> coincident_pairs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if ((*this)(i, j) <= 0.0)
                    out.emplace_back(i, j);
        return out;
    }

    /// Same space with points reordered: new point k is old point order[k].
    FiniteSpace permuted(const std::vector<std::size_t>& order) const {
        if (order.size() != size())
            throw malformed_input("permutation size mismatch");
        std::vector<std::string> labels;
        std::vector<std::vector<double>> dist(size(), std::vector<double>(size()));
        for (std::size_t a = 0; a < size(); ++a) {
            labels.push_back(labels_.at(order[a]));
            for (std::size_t b = 0; b < size(); ++b)
                dist[a][b] = (*this)(order[a], order[b]);
        }
        return FiniteSpace(std::move(labels), std::move(dist), tolerance_);
    }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
    std::vector<double> table_;
    double tolerance_ = default_distance_tolerance;
};

/// A violating or extremal quadruple (x, u, v, y) of the b-rectangular inequality.
struct QuadrupleWitness {
    std::array<std::size_t, 4> points{};   // x, u, v, y
    std::array<std::string, 4> labels{};
    double lhs = 0.0;                       // d(x, y)
    double bracket = 0.0;                   // d(x, u) + d(u, v) + d(v, y)
    double ratio = 0.0;
};

struct CoefficientReport {
    double requested_s = 1.0;
    bool holds = false;
    double minimal_s = 1.0;
    bool vacuous = false;  // fewer than four points: no admissible quadruple
    bool sampled = false;  // minimal_s is a lower bound from random quadruples
    std::uint64_t quadruples_checked = 0;
    std::optional<QuadrupleWitness> witness;
    std::vector<std::pair<std::string, std::string>> identity_failures;
};

struct CoefficientEstimate {
    double value = 1.0;
    bool vacuous = false;
    bool sampled = false;
    std::optional<QuadrupleWitness> argmax;
};

/// A failed inequality instance: the tuple plus both sides.
struct TupleWitness {
    std::string kind;  // "identity", "triangle" or "quadrilateral"
    std::vector<std::size_t> points;
    std::vector<std::string> labels;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct TaxonomyFlags {
    bool is_metric = false;
    bool is_rectangular = false;
    std::optional<double> b_metric_s;
    std::optional<double> b_rectangular_s;
    std::vector<TupleWitness> witnesses;
};

struct SampledMode {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

struct EnumerationOptions {
    std::optional<SampledMode> sampled;
    unsigned threads = thread_budget();
    std::size_t exhaustive_limit = 200;
};

namespace detail {

using Quad = std::array<std::size_t, 4>;

struct QuadScan {
    double best_ratio = -1.0;
    Quad best{};
    double best_excess = -std::numeric_limits<double>::infinity();
    Quad worst{};
    std::uint64_t checked = 0;
    bool zero_bracket = false;
    Quad zero_at{};

    /// Keeps the first maximizer seen; callers feed candidates in lexicographic order.
    void consider(const Quad& q, double lhs, double bracket, double s) {
        ++checked;
        double ratio;
        if (bracket > 0.0) {
            ratio = lhs / bracket;
        } else {
            if (!zero_bracket) {
                zero_bracket = true;
                zero_at = q;
            }
            ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        if (ratio > best_ratio || (ratio == best_ratio && q < best)) {
            best_ratio = ratio;
            best = q;
        }
        double excess = lhs - s * bracket;
        if (excess > best_excess || (excess == best_excess && q < worst)) {
            best_excess = excess;
            worst = q;
        }
    }

    void merge(const QuadScan& other) {
        checked += other.checked;
        if (other.checked == 0)
            return;
        if (other.best_ratio > best_ratio || (other.best_ratio == best_ratio && other.best < best)) {
            best_ratio = other.best_ratio;
            best = other.best;
        }
        if (other.best_excess > best_excess || (other.best_excess == best_excess && other.worst < worst)) {
            best_excess = other.best_excess;
            worst = other.worst;
        }
        if (other.zero_bracket && (!zero_bracket || other.zero_at < zero_at)) {
            zero_bracket = true;
            zero_at = other.zero_at;
        }
    }
};

/// Exhaustive scan over admissible quadruples with x < y.
///
/// d(x,y) and the bracket are both invariant under (x,u,v,y) -> (y,v,u,x), and
/// of each such pair the x < y member is lexicographically smaller, so the
/// restriction loses neither the maximum nor the tie-break winner.
inline QuadScan scan_exhaustive(const FiniteSpace& space, double s, unsigned threads) {
    const std::size_t n = space.size();
    auto per_x = parallel_map<QuadScan>(
        n,
        [&](std::size_t x) {
            QuadScan scan;
            const double* dx = space.row(x);
            for (std::size_t u = 0; u < n; ++u) {
                if (u == x)
                    continue;
                const double* du = space.row(u);
                for (std::size_t v = 0; v < n; ++v) {
                    if (v == x || v == u)
                        continue;
                    const double head = dx[u] + du[v];
                    const double* dv = space.row(v);
                    for (std::size_t y = x + 1; y < n; ++y) {
                        if (y == u || y == v)
                            continue;
                        scan.consider({x, u, v, y}, dx[y], head + dv[y], s);
                    }
                }
            }
            return scan;
        },
        threads);
    QuadScan total;
    for (const auto& part : per_x)
        total.merge(part);
    return total;
}

inline QuadScan scan_sampled(const FiniteSpace& space, double s, const SampledMode& mode) {
    const std::size_t n = space.size();
    Rng rng(mode.seed);
    QuadScan scan;
    for (std::uint64_t k = 0; k < mode.count; ++k) {
        Quad q;
        do {
            for (auto& p : q)
                p = static_cast<std::size_t>(rng.index(n));
        } while (q[0] == q[1] || q[0] == q[2] || q[0] == q[3] || q[1] == q[2] || q[1] == q[3] || q[2] == q[3]);
        if (q[0] > q[3])
            q = {q[3], q[2], q[1], q[0]};
        scan.consider(q, space(q[0], q[3]), space(q[0], q[1]) + space(q[1], q[2]) + space(q[2], q[3]), s);
    }
    return scan;
}

inline QuadScan scan(const FiniteSpace& space, double s, const EnumerationOptions& options) {
    if (options.sampled) {
        if (options.sampled->count == 0)
            throw malformed_input("sampled mode needs a positive sample count");
        return scan_sampled(space, s, *options.sampled);
    }
    if (space.size() > options.exhaustive_limit)
        throw malformed_input("space has " + std::to_string(space.size()) + " points; exhaustive enumeration is limited to " +
                              std::to_string(options.exhaustive_limit) + " (use sampled mode)");
    return scan_exhaustive(space, s, options.threads);
}

inline QuadrupleWitness make_witness(const FiniteSpace& space, const Quad& q) {
    QuadrupleWitness w;
    w.points = q;
    for (std::size_t k = 0; k < 4; ++k)
        w.labels[k] = space.label(q[k]);
    w.lhs = space(q[0], q[3]);
    w.bracket = space(q[0], q[1]) + space(q[1], q[2]) + space(q[2], q[3]);
    w.ratio = w.bracket > 0.0 ? w.lhs / w.bracket : std::numeric_limits<double>::infinity();
    return w;
}

} // namespace detail

/// Checks the b-rectangular axioms for coefficient s and computes the minimal
/// coefficient by enumerating every admissible quadruple.
inline CoefficientReport validate_space(const FiniteSpace& space, double s, const EnumerationOptions& options = {}) {
    if (!(s >= 1.0))
        throw malformed_input("coefficient s must be >= 1, got " + format_real(s));
    CoefficientReport report;
    report.requested_s = s;
    for (auto [i, j] : space.coincident_pairs())
        report.identity_failures.emplace_back(space.label(i), space.label(j));

    if (space.size() < 4) {
        report.vacuous = true;
        report.minimal_s = 1.0;
        report.holds = report.identity_failures.empty();
        return report;
    }

    auto scan = detail::scan(space, s, options);
    report.sampled = options.sampled.has_value();
    report.quadruples_checked = scan.checked;
    report.minimal_s = std::max(1.0, scan.best_ratio);
    const bool inequality_holds = scan.best_excess <= space.tolerance();
    report.holds = inequality_holds && report.identity_failures.empty();
    if (!inequality_holds) {
        // Prefer the maximal-ratio quadruple; it violates unless the excess is
        // only visible in absolute terms elsewhere.
        auto candidate = detail::make_witness(space, scan.best);
        if (candidate.lhs - s * candidate.bracket > space.tolerance())
            report.witness = candidate;
        else
            report.witness = detail::make_witness(space, scan.worst);
    }
    return report;
}

/// Max over admissible quadruples of d(x,y) / (d(x,u) + d(u,v) + d(v,y)).
inline CoefficientEstimate minimal_coefficient(const FiniteSpace& space, const EnumerationOptions& options = {}) {
    CoefficientEstimate estimate;
    if (space.size() < 4) {
        estimate.vacuous = true;
        return estimate;
    }
    auto scan = detail::scan(space, 1.0, options);
    if (scan.zero_bracket) {
        const auto& q = scan.zero_at;
        throw malformed_input("zero denominator for quadruple (" + space.label(q[0]) + ", " + space.label(q[1]) + ", " +
                              space.label(q[2]) + ", " + space.label(q[3]) + "): identity axiom violated");
    }
    estimate.value = scan.best_ratio;
    estimate.sampled = options.sampled.has_value();
    estimate.argmax = detail::make_witness(space, scan.best);
    return estimate;
}

/// Triangle and quadrilateral (s = 1) checks with witnesses.
inline TaxonomyFlags classify_space(const FiniteSpace& space, const EnumerationOptions& options = {}) {
    TaxonomyFlags flags;
    const std::size_t n = space.size();
    const double tol = space.tolerance();

    bool identity_ok = true;
    for (auto [i, j] : space.coincident_pairs()) {
        identity_ok = false;
        flags.witnesses.push_back({"identity", {i, j}, {space.label(i), space.label(j)}, 0.0, 0.0});
    }

    // Triangle: d(x,y) <= d(x,m) + d(m,y) over distinct triples, x < y.
    bool triangle_ok = true;
    if (n >= 3) {
        double best = -1.0;
        std::array<std::size_t, 3> arg{};
        double worst_excess = -std::numeric_limits<double>::infinity();
        std::array<std::size_t, 3> worst{};
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t m = 0; m < n; ++m) {
                if (m == x)
                    continue;
                for (std::size_t y = x + 1; y < n; ++y) {
                    if (y == m)
                        continue;
                    double lhs = space(x, y);
                    double rhs = space(x, m) + space(m, y);
                    double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
                    if (ratio > best) {
                        best = ratio;
                        arg = {x, m, y};
                    }
                    if (lhs - rhs > worst_excess) {
                        worst_excess = lhs - rhs;
                        worst = {x, m, y};
                    }
                }
            }
        flags.b_metric_s = std::max(1.0, best);
        if (worst_excess > tol) {
            triangle_ok = false;
            auto t = space(arg[0], arg[2]) - (space(arg[0], arg[1]) + space(arg[1], arg[2])) > tol ? arg : worst;
            flags.witnesses.push_back({"triangle",
                                       {t[0], t[1], t[2]},
                                       {space.label(t[0]), space.label(t[1]), space.label(t[2])},
                                       space(t[0], t[2]),
                                       space(t[0], t[1]) + space(t[1], t[2])});
        }
    }

    bool quadrilateral_ok = true;
    if (n >= 4) {
        auto report = validate_space(space, 1.0, options);
        flags.b_rectangular_s = report.minimal_s;
        if (report.witness) {
            quadrilateral_ok = false;
            const auto& w = *report.witness;
            flags.witnesses.push_back({"quadrilateral",
                                       {w.points.begin(), w.points.end()},
                                       {w.labels.begin(), w.labels.end()},
                                       w.lhs,
                                       w.bracket});
        }
    }

    flags.is_metric = identity_ok && triangle_ok;
    flags.is_rectangular = identity_ok && quadrilateral_ok;
    return flags;
}

/// Closed interval of the real line.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Point set A ∪ B1 ∪ ... over the reals: a finite set A carrying an explicit
/// table, plus intervals. Every pair not fully inside A uses |x - y|^power.
class PiecewiseSpace {
public:
    PiecewiseSpace(std::optional<FiniteSpace> discrete, std::vector<Interval> intervals, double power = 2.0)
        : discrete_(std::move(discrete)), intervals_(std::move(intervals)), power_(power) {
        for (const auto& iv : intervals_)
            if (!(iv.lo < iv.hi))
                throw malformed_input("interval [" + format_real(iv.lo) + ", " + format_real(iv.hi) + "] is empty");
        if (!(power_ > 0.0))
            throw malformed_input("distance power must be positive");
    }

    /// Plain interval with metric |x - y|^power.
    static PiecewiseSpace interval(double lo, double hi, double power = 1.0) {
        return PiecewiseSpace(std::nullopt, {{lo, hi}}, power);
    }

    bool contains(double x) const {
        if (discrete_ && discrete_->contains(x))
            return true;
        return std::any_of(intervals_.begin(), intervals_.end(), [x](const Interval& iv) { return iv.contains(x); });
    }

    double distance(double x, double y) const {
        if (!contains(x))
            throw closure_error("value " + format_real(x) + " is not a point of the space");
        if (!contains(y))
            throw closure_error("value " + format_real(y) + " is not a point of the space");
        if (discrete_) {
            auto i = discrete_->index_of(x);
            auto j = discrete_->index_of(y);
            if (i && j)
                return (*discrete_)(*i, *j);
        }
        if (x == y)
            return 0.0;
        return std::pow(std::fabs(x - y), power_);
    }

    std::string label_of(double x) const {
        if (discrete_)
            if (auto i = discrete_->index_of(x))
                return discrete_->label(*i);
        return format_real(x);
    }

    const std::optional<FiniteSpace>& discrete() const noexcept { return discrete_; }
    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    double power() const noexcept { return power_; }

    /// Finite points first, then per_interval uniform nodes (endpoints included)
    /// of each interval; values already present are skipped.
    std::vector<double> sample_points(std::size_t per_interval) const {
        std::vector<double> pts;
        if (discrete_)
            for (std::size_t i = 0; i < discrete_->size(); ++i)
                pts.push_back(discrete_->value(i));
        auto present = [&](double v) {
            return std::any_of(pts.begin(), pts.end(), [v](double p) {
                return std::fabs(p - v) <= default_distance_tolerance * std::max(1.0, std::fabs(v));
            });
        };
        for (const auto& iv : intervals_) {
            if (per_interval == 0)
                continue;
            if (per_interval == 1) {
                if (!present(iv.lo))
                    pts.push_back(iv.lo);
                continue;
            }
            for (std::size_t k = 0; k < per_interval; ++k) {
                double v = k + 1 == per_interval
                               ? iv.hi
                               : iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) / static_cast<double>(per_interval - 1);
                if (!present(v))
                    pts.push_back(v);
            }
        }
        return pts;
    }

    /// Materializes the sample as a FiniteSpace with labels from label_of.
    FiniteSpace sample(std::size_t per_interval) const { return restrict_to(sample_points(per_interval)); }

    FiniteSpace restrict_to(const std::vector<double>& pts) const {
        std::vector<std::string> labels;
        labels.reserve(pts.size());
        for (double p : pts)
            labels.push_back(label_of(p));
        std::vector<std::vector<double>> dist(pts.size(), std::vector<double>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                dist[i][j] = i == j ? 0.0 : distance(pts[i], pts[j]);
        return FiniteSpace(std::move(labels), std::move(dist));
    }

    /// Draws a point: a finite point with probability discrete_weight, else
    /// uniform over the intervals weighted by length.
    double draw(Rng& rng, double discrete_weight = 0.25) const {
        const bool have_discrete = discrete_ && discrete_->size() > 0;
        if (have_discrete && (intervals_.empty() || rng.unit() < discrete_weight))
            return discrete_->value(static_cast<std::size_t>(rng.index(discrete_->size())));
        if (intervals_.empty())
            throw malformed_input("space has nothing to sample");
        double total = 0.0;
        for (const auto& iv : intervals_)
            total += iv.hi - iv.lo;
        double pick = rng.unit() * total;
        for (const auto& iv : intervals_) {
            double len = iv.hi - iv.lo;
            if (pick <= len)
                return iv.lo + pick;
            pick -= len;
        }
        return intervals_.back().hi;
    }

private:
    std::optional<FiniteSpace> discrete_;
    std::vector<Interval> intervals_;
    double power_ = 2.0;
};

/// Anything with a membership test, a distance on real-valued points and labels.
template <class S>
concept MetricDomain = requires(const S& space, double x) {
    { space.contains(x) } -> std::convertible_to<bool>;
    { space.distance(x, x) } -> std::convertible_to<double>;
    { space.label_of(x) } -> std::convertible_to<std::string>;
};

} // namespace contractum
