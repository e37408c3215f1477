#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "haar/errors.hpp"
#include "haar/functions/builtins.hpp"
#include "haar/generic/integral.hpp"
#include "haar/packing/packing.hpp"
#include "haar/quadrature/derived.hpp"

namespace haar {

struct RunConfig {
    std::string group = "su2";
    std::string method = "quadrature";
    std::string function = "builtin:one";
    std::int64_t precision = 6;
    std::int64_t n_min = 4;
    std::int64_t n_max = 8;
    int repeats = 5;
    /// 0 keeps the default cap of the chosen method.
    std::uint64_t effort_cap = 0;
    std::string cayley;
    std::string center = "e";
    std::string radius = "1/8";
};

struct BenchRecord {
    std::int64_t precision = 0;
    double seconds_mean = 0, seconds_min = 0, seconds_max = 0;
    CertifiedValue value;
};

namespace detail {

inline std::shared_ptr<const Group> load_group(const RunConfig& cfg) {
    if (!cfg.cayley.empty()) {
        std::ifstream in(cfg.cayley);
        if (!in) throw InvalidArgument("cannot open Cayley table '" + cfg.cayley + "'");
        const CayleyTable t = parse_cayley(in);
        if (cfg.group != "finite") throw InvalidArgument("--cayley needs --group finite");
        return std::make_shared<const Group>(make_group("finite", &t));
    }
    return std::make_shared<const Group>(make_group(cfg.group));
}

inline IntegrandSpec load_function(const Group& g, const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return make_builtin(g, spec.substr(8));
    if (spec.rfind("values:", 0) == 0) {
        if (!g.is_finite()) throw InvalidArgument("value files need a finite group");
        std::ifstream in(spec.substr(7));
        if (!in) throw InvalidArgument("cannot open value file '" + spec.substr(7) + "'");
        auto values = parse_values(in);
        if (values.size() != g.order())
            throw InvalidArgument("value file has " + std::to_string(values.size()) + " entries, group order is " +
                                  std::to_string(g.order()));
        return table_function(std::move(values));
    }
    return make_builtin(g, spec);
}

inline bool quadrature_group(GroupKind k) {
    return k == GroupKind::circle || k == GroupKind::su2 || k == GroupKind::so3 || k == GroupKind::o3 ||
           k == GroupKind::u2;
}

// Circle tables are virtual beyond a few thousand points, so a deep table is
// cheap; kappa(n) = 2^n - 1 must still fit in 63 bits.
inline PackingTable packing_table_for(const Group& g, std::int64_t depth) {
    return PackingTable::build(g, std::min<std::int64_t>(depth, 60));
}

inline void check_precision(std::int64_t n) {
    if (n < 1) throw InvalidArgument("precision must be at least 1");
    if (n > 60) throw InvalidArgument("precision above 60 is not supported");
}

inline CertifiedValue integrate_once(const std::shared_ptr<const Group>& g, const IntegrandSpec& f,
                                     const RunConfig& cfg, std::int64_t n) {
    const Group& gref = *g;
    if (cfg.method == "quadrature") {
        if (!quadrature_group(gref.kind))
            throw InvalidArgument("quadrature needs one of circle, su2, so3, o3, u2");
        QuadratureOptions opt;
        if (cfg.effort_cap) opt.effort_cap = cfg.effort_cap;
        return haar_integral_quadrature(gref.kind, f, n, opt);
    }
    if (cfg.method == "generic") {
        if (!gref.has_kappa()) throw InvalidArgument("the generic method needs a group with known packing sizes");
        const ModulusOfContinuity mod =
            gref.is_finite() ? ModulusOfContinuity::discrete() : ModulusOfContinuity::lipschitz(f.lipschitz);
        const PackingTable table = packing_table_for(gref, 3 * n + 24);
        return compute_integral(g, f.eval, mod, f.bound, table, n);
    }
    throw InvalidArgument("unknown method '" + cfg.method + "'");
}

inline Element parse_element(const Group& g, const std::string& s) {
    if (s == "e") return g.identity;
    if (g.is_finite()) {
        const int k = static_cast<int>(Dyadic::parse(s).floor_int());
        if (k < 0 || static_cast<std::size_t>(k) >= g.order() || Dyadic(k) != Dyadic::parse(s))
            throw InvalidArgument("element index out of range: '" + s + "'");
        return FiniteIndex{k};
    }
    if (g.kind == GroupKind::circle) return circle_point(wrap_unit(Dyadic::parse(s)));
    throw InvalidArgument("centre must be 'e' on " + g.name);
}

inline std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// The exact dyadic in decimal: shortest round-trip form when it is a double.
inline std::string format_value(const Dyadic& v) {
    const double d = v.to_double();
    if (Dyadic::from_double(d) == v) return format_double(d);
    return v.to_decimal(40, false);
}

}  // namespace detail

/// Decimal digits for 2^-n output: ceil(n log10 2) + 1.
inline int decimal_digits(std::int64_t n) {
    return static_cast<int>(std::ceil(static_cast<double>(n) * 0.30102999566398120)) + 1;
}

/// `value ± 2^-n` followed by an outward-rounded decimal interval.
inline void print_certified(std::ostream& out, const CertifiedValue& v) {
    const std::int64_t n = -v.error_exponent;
    const int digits = decimal_digits(n);
    const Interval e = v.enclosure();
    out << v.value.to_decimal(digits, false) << " ± 2^" << v.error_exponent << '\n';
    out << '[' << e.lo().to_decimal(digits, false) << ", " << e.hi().to_decimal(digits, true) << "]\n";
}

template <class Body>
int guarded(std::ostream& err, Body body) {
    try {
        return body();
    } catch (const error& e) {
        err << e.what() << '\n';
        return is_computation_failure(e) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline int run_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        detail::check_precision(cfg.precision);
        const auto g = detail::load_group(cfg);
        const IntegrandSpec f = detail::load_function(*g, cfg.function);
        print_certified(out, detail::integrate_once(g, f, cfg, cfg.precision));
        return 0;
    });
}

/// Measure of the closed ball B(center, radius).
inline int run_measure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        detail::check_precision(cfg.precision);
        if (cfg.method != "generic") throw InvalidArgument("measure supports only --method generic");
        const auto g = detail::load_group(cfg);
        if (!g->has_kappa()) throw InvalidArgument("measure needs a group with known packing sizes");
        const Dyadic r = Dyadic::parse(cfg.radius);
        if (r.sign() < 0) throw InvalidArgument("radius must be nonnegative");
        const LocatedSet ball = LocatedSet::ball(g, detail::parse_element(*g, cfg.center), r);
        const PackingTable table = detail::packing_table_for(*g, cfg.precision + 24);
        print_certified(out, compute_measure(ball, table, cfg.precision));
        return 0;
    });
}

inline int run_packing(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.precision < 0) throw InvalidArgument("packing index must be nonnegative");
        const auto g = detail::load_group(cfg);
        PackingOptions opt;
        if (cfg.effort_cap) opt.effort = static_cast<std::int64_t>(cfg.effort_cap);
        if (!g->has_kappa()) throw KappaUnavailable("no closed-form packing size for " + g->name);
        const PackingTable table = PackingTable::build(*g, std::min<std::int64_t>(cfg.precision, 62), opt);
        write_packing(out, table.at(cfg.precision));
        return 0;
    });
}

inline std::vector<BenchRecord> bench(const RunConfig& cfg) {
    if (cfg.n_min > cfg.n_max) throw InvalidArgument("--n-min exceeds --n-max");
    if (cfg.repeats < 1) throw InvalidArgument("--repeats must be positive");
    detail::check_precision(cfg.n_min);
    detail::check_precision(cfg.n_max);
    const auto g = detail::load_group(cfg);
    const IntegrandSpec f = detail::load_function(*g, cfg.function);
    std::vector<BenchRecord> rows;
    for (std::int64_t n = cfg.n_min; n <= cfg.n_max; ++n) {
        BenchRecord rec;
        rec.precision = n;
        double total = 0;
        rec.seconds_min = INFINITY;
        for (int r = 0; r < cfg.repeats; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            rec.value = detail::integrate_once(g, f, cfg, n);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            total += s;
            rec.seconds_min = std::min(rec.seconds_min, s);
            rec.seconds_max = std::max(rec.seconds_max, s);
        }
        rec.seconds_mean = total / cfg.repeats;
        rows.push_back(rec);
    }
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
    out << "precision,seconds_mean,seconds_min,seconds_max,value,error_exponent\n";
    for (const auto& r : rows)
        out << r.precision << ',' << detail::format_double(r.seconds_mean) << ','
            << detail::format_double(r.seconds_min) << ',' << detail::format_double(r.seconds_max) << ','
            << detail::format_value(r.value.value) << ',' << r.value.error_exponent << '\n';
}

inline int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rows = bench(cfg);
        write_bench_csv(out, rows);
        return 0;
    });
}

}  // namespace haar
