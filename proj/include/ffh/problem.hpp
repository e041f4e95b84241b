#ifndef FFH_PROBLEM_HPP
#define FFH_PROBLEM_HPP

// Problem files: a line-oriented section / key-value format.
//
//   # comment
//   [map]
//   k = 1                 # optional, defaults to (number of forms) - 1
//   d = 2                 # optional, checked against every form
//   F0 = X0^2 + t*X1^2
//   F1 = X1^2
//   [points]
//   origin = ["0", "1"]
//   [options]
//   budget = 30
//
// Option keys: budget, iters, max_deg, coeff_bound, threads. Everything is
// validated while parsing, including the morphism certificate; every error
// carries the line and column it refers to.

#include "ffh/endomorphism.hpp"
#include "ffh/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ffh {

struct ProblemOptions {
    std::optional<std::size_t> budget;
    std::optional<std::size_t> iters;
    std::optional<std::size_t> max_deg;
    std::optional<std::size_t> coeff_bound;
    std::optional<std::size_t> threads;
    friend bool operator==(const ProblemOptions&, const ProblemOptions&) = default;
};

struct NamedPoint {
    std::string name;
    ProjectivePoint point;
    friend bool operator==(const NamedPoint&, const NamedPoint&) = default;
};

struct ProblemFile {
    Endomorphism map;
    std::vector<NamedPoint> points;
    ProblemOptions options;
    friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

namespace detail {

struct Entry {
    std::string key;
    std::string value;
    SourceLocation key_at;
    SourceLocation value_at;
};

inline bool is_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

inline std::size_t parse_count(const Entry& e) {
    const std::string& v = e.value;
    if (v.empty() || v.size() > 18 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(Errc::SyntaxError, "`" + e.key + "` expects a nonnegative integer", e.value_at);
    return std::stoull(v);
}

// ["lit", "lit", ...] with exact columns for every literal.
inline std::vector<UniPoly> parse_point_literals(const Entry& e) {
    const std::string& v = e.value;
    auto at = [&](std::size_t i) { return SourceLocation{e.value_at.line, e.value_at.column + i}; };
    std::size_t i = 0;
    auto skip = [&] {
        while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    };
    if (v.empty() || v[0] != '[') throw ParseError(Errc::SyntaxError, "expected '[' to start a coordinate list", at(0));
    ++i;
    std::vector<UniPoly> out;
    skip();
    if (i < v.size() && v[i] == ']') throw ParseError(Errc::SyntaxError, "empty coordinate list", at(i));
    for (;;) {
        skip();
        if (i >= v.size() || v[i] != '"') throw ParseError(Errc::SyntaxError, "expected a quoted polynomial literal", at(i));
        const std::size_t start = ++i;
        while (i < v.size() && v[i] != '"') ++i;
        if (i >= v.size()) throw ParseError(Errc::SyntaxError, "unterminated string", at(start - 1));
        out.push_back(parse_unipoly(std::string_view(v).substr(start, i - start), at(start)));
        ++i;
        skip();
        if (i < v.size() && v[i] == ',') {
            ++i;
            continue;
        }
        if (i < v.size() && v[i] == ']') {
            ++i;
            skip();
            if (i != v.size()) throw ParseError(Errc::SyntaxError, "trailing characters after ']'", at(i));
            return out;
        }
        throw ParseError(Errc::SyntaxError, "expected ',' or ']'", at(i));
    }
}

}  // namespace detail

inline ProblemFile parse_problem(std::string_view text) {
    using detail::Entry;
    std::optional<SourceLocation> map_at;
    std::vector<Entry> map_entries, point_entries, option_entries;
    std::vector<Entry>* section = nullptr;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::size_t b = 0;
        while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        std::size_t e = line.size();
        while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
        if (b == e) continue;
        const SourceLocation here{line_no, b + 1};

        if (line[b] == '[') {
            if (line[e - 1] != ']') throw ParseError(Errc::SyntaxError, "unterminated section header", here);
            std::string name = line.substr(b + 1, e - b - 2);
            if (name == "map") {
                if (map_at) throw ParseError(Errc::SyntaxError, "duplicate [map] section", here);
                map_at = here;
                section = &map_entries;
            } else if (name == "points") {
                section = &point_entries;
            } else if (name == "options") {
                section = &option_entries;
            } else {
                throw ParseError(Errc::SyntaxError, "unknown section [" + name + "]", here);
            }
            continue;
        }
        if (!section) throw ParseError(Errc::SyntaxError, "entry outside of a section", here);
        std::size_t k = b;
        while (k < e && detail::is_key_char(line[k])) ++k;
        if (k == b) throw ParseError(Errc::SyntaxError, "expected a key", here);
        Entry entry{line.substr(b, k - b), {}, here, {}};
        while (k < e && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k == e || line[k] != '=') throw ParseError(Errc::SyntaxError, "expected '=' after `" + entry.key + "`", {line_no, k + 1});
        ++k;
        while (k < e && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        if (k == e) throw ParseError(Errc::SyntaxError, "missing value for `" + entry.key + "`", {line_no, k + 1});
        entry.value = line.substr(k, e - k);
        entry.value_at = {line_no, k + 1};
        for (const auto& prev : *section)
            if (prev.key == entry.key) throw ParseError(Errc::SyntaxError, "duplicate key `" + entry.key + "`", here);
        section->push_back(std::move(entry));
    }
    if (!map_at) throw ParseError(Errc::SyntaxError, "missing [map] section", {1, 1});

    // Map.
    std::optional<std::size_t> k_decl;
    std::optional<unsigned> d_decl;
    std::map<std::size_t, const Entry*> form_entries;
    for (const auto& en : map_entries) {
        if (en.key == "k") {
            k_decl = detail::parse_count(en);
            if (*k_decl == 0) throw ParseError(Errc::DimensionMismatch, "k must be at least 1", en.value_at);
        } else if (en.key == "d") {
            d_decl = static_cast<unsigned>(detail::parse_count(en));
        } else if (en.key.size() > 1 && en.key[0] == 'F' &&
                   std::all_of(en.key.begin() + 1, en.key.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                   en.key.size() < 8) {
            form_entries[std::stoul(en.key.substr(1))] = &en;
        } else {
            throw ParseError(Errc::SyntaxError, "unknown map key `" + en.key + "`", en.key_at);
        }
    }
    if (form_entries.size() < 2 && !k_decl) throw ParseError(Errc::DimensionMismatch, "a map needs at least two forms F0, F1", *map_at);
    const std::size_t k = k_decl ? *k_decl : form_entries.size() - 1;
    for (const auto& [i, en] : form_entries)
        if (i > k) throw ParseError(Errc::DimensionMismatch, "form F" + std::to_string(i) + " exceeds k = " + std::to_string(k), en->key_at);
    for (std::size_t i = 0; i <= k; ++i)
        if (!form_entries.count(i)) throw ParseError(Errc::DimensionMismatch, "missing form F" + std::to_string(i), *map_at);

    std::vector<HomogeneousForm> forms;
    std::optional<unsigned> d = d_decl;
    for (std::size_t i = 0; i <= k; ++i) {
        const Entry& en = *form_entries.at(i);
        MPoly p = parse_mpoly(en.value, k + 1, en.value_at);
        try {
            forms.emplace_back(std::move(p), d);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& err) {
            throw ParseError(err.code(), err.reason(), en.value_at);
        }
        d = forms.back().d();
    }

    ProblemFile out;
    try {
        out.map = endo_build(std::move(forms));
    } catch (const Error& err) {
        throw ParseError(err.code(), err.reason(), *map_at);
    }

    // Points.
    for (const auto& en : point_entries) {
        std::vector<UniPoly> coords = detail::parse_point_literals(en);
        if (coords.size() != k + 1)
            throw ParseError(Errc::DimensionMismatch,
                             "point `" + en.key + "` has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(k + 1),
                             en.value_at);
        try {
            out.points.push_back({en.key, pp_normalize(std::span<const UniPoly>(coords))});
        } catch (const Error& err) {
            throw ParseError(err.code(), err.reason(), en.value_at);
        }
    }

    // Options.
    for (const auto& en : option_entries) {
        const std::size_t v = detail::parse_count(en);
        if (en.key == "budget") out.options.budget = v;
        else if (en.key == "iters") out.options.iters = v;
        else if (en.key == "max_deg") out.options.max_deg = v;
        else if (en.key == "coeff_bound") out.options.coeff_bound = v;
        else if (en.key == "threads") out.options.threads = v;
        else throw ParseError(Errc::SyntaxError, "unknown option `" + en.key + "`", en.key_at);
    }
    return out;
}

/// Canonical text form; parse_problem(serialize(p)) == p.
inline std::string serialize(const ProblemFile& p) {
    std::string s = "[map]\n";
    s += "k = " + std::to_string(p.map.k()) + "\n";
    s += "d = " + std::to_string(p.map.d()) + "\n";
    for (std::size_t i = 0; i < p.map.forms().size(); ++i)
        s += "F" + std::to_string(i) + " = " + to_string(p.map.forms()[i]) + "\n";
    if (!p.points.empty()) {
        s += "\n[points]\n";
        for (const auto& np : p.points) {
            s += np.name + " = [";
            const auto lits = to_literals(np.point);
            for (std::size_t i = 0; i < lits.size(); ++i) s += (i ? ", \"" : "\"") + lits[i] + "\"";
            s += "]\n";
        }
    }
    const auto& o = p.options;
    std::string opts;
    auto put = [&](const char* key, const std::optional<std::size_t>& v) {
        if (v) opts += std::string(key) + " = " + std::to_string(*v) + "\n";
    };
    put("budget", o.budget);
    put("iters", o.iters);
    put("max_deg", o.max_deg);
    put("coeff_bound", o.coeff_bound);
    put("threads", o.threads);
    if (!opts.empty()) s += "\n[options]\n" + opts;
    return s;
}

}  // namespace ffh

#endif  // FFH_PROBLEM_HPP
