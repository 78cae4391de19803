#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "semisd/autoregressive.hpp"
#include "semisd/errors.hpp"
#include "semisd/subordination.hpp"

namespace semisd {

namespace detail {

/// Shortest round-trippable decimal form, locale-independent.
inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_value(double v, bool integer_valued) {
    if (integer_valued) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    return fmt_double(v);
}

}  // namespace detail

/// CSV with a single '#'-prefixed JSON provenance comment, RFC-4180-style
/// rows, LF line endings. No timestamps: identical inputs give identical bytes.
inline void write_series_csv(std::ostream& os, const SeriesSample& sample,
                             const nlohmann::json& provenance) {
    os << '#' << provenance.dump() << '\n';
    os << "index,value\n";
    for (std::size_t i = 0; i < sample.values.size(); ++i)
        os << i << ',' << detail::fmt_value(sample.values[i], sample.integer_valued) << '\n';
}

inline void write_paths_csv(std::ostream& os, const PathSample& sample,
                            const nlohmann::json& provenance) {
    os << '#' << provenance.dump() << '\n';
    os << "path_id,t,T_value,X_value\n";
    for (std::size_t r = 0; r < sample.rows(); ++r)
        os << sample.path_id[r] << ',' << detail::fmt_double(sample.t[r]) << ','
           << detail::fmt_double(sample.T_value[r]) << ','
           << detail::fmt_double(sample.X_value[r]) << '\n';
}

/// Plot-ready table of transform evaluations: s, Re, Im.
inline void write_eval_csv(std::ostream& os, const Transform& t,
                           const std::vector<double>& grid, const nlohmann::json& provenance) {
    os << '#' << provenance.dump() << '\n';
    os << "s,re,im\n";
    for (double s : grid) {
        const Complex v = t(s);
        os << detail::fmt_double(s) << ',' << detail::fmt_double(v.real()) << ','
           << detail::fmt_double(v.imag()) << '\n';
    }
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open output path: " + path);
    os << text;
    if (!os) throw Error("write failed: " + path);
}

}  // namespace semisd
