#ifndef FFH_CLI_HPP
#define FFH_CLI_HPP

// Command dispatch for the ffheight tool. run_command works on an already
// parsed problem and returns the rendered output; run_cli adds argument
// parsing and file handling on top.
//
// Exit codes: 0 success, 1 input error, 2 internal error.

#include "ffh/problem.hpp"
#include "ffh/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

namespace ffh {

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"height", "hhat", "classify", "orbit", "gap-scan", "isotrivial"};
    return names;
}

struct CommandFlags {
    std::string format = "text";  // text | json
    std::optional<std::size_t> iters;
    std::optional<std::size_t> budget;
    std::optional<std::size_t> max_deg;
    std::optional<std::size_t> coeff_bound;
    std::optional<std::size_t> threads;
    std::optional<std::string> point;  // restrict to one named point
    std::optional<int> decimal;        // digits of approximate decimal output
};

struct CommandResult {
    int exit_code = 0;
    std::string output;
    std::string error;
};

inline constexpr std::size_t kDefaultIters = 8;
inline constexpr std::size_t kDefaultBudget = 30;
inline constexpr std::size_t kDefaultMaxDeg = 1;
inline constexpr std::size_t kDefaultCoeffBound = 1;

namespace detail {

inline std::size_t pick(const std::optional<std::size_t>& flag, const std::optional<std::size_t>& file, std::size_t dflt) {
    return flag ? *flag : file ? *file : dflt;
}

inline std::string approx(const Rational& x, const std::optional<int>& digits) {
    return digits ? " (approx " + to_decimal(x, *digits) + ")" : std::string();
}

inline std::vector<const NamedPoint*> selected_points(const ProblemFile& p, const CommandFlags& flags) {
    std::vector<const NamedPoint*> out;
    for (const auto& np : p.points)
        if (!flags.point || np.name == *flags.point) out.push_back(&np);
    if (flags.point && out.empty()) throw Error(Errc::SyntaxError, "no point named `" + *flags.point + "`");
    if (out.empty()) throw Error(Errc::SyntaxError, "the problem file has no [points]");
    return out;
}

inline void map_text(std::ostringstream& os, const Endomorphism& f) {
    os << "map on P^" << f.k() << " of degree " << f.d() << ": (";
    for (std::size_t i = 0; i < f.forms().size(); ++i) os << (i ? ", " : "") << to_string(f.forms()[i]);
    os << ")\n";
    os << "coefficient height " << f.coeff_height() << ", defect bound C = " << f.defect_bound()
       << ", resultant at t = " << f.certificate().t0 << " is " << f.certificate().value << "\n";
}

}  // namespace detail

inline CommandResult run_command(const std::string& command, const ProblemFile& problem, const CommandFlags& flags) {
    CommandResult res;
    try {
        if (flags.format != "text" && flags.format != "json")
            throw Error(Errc::SyntaxError, "unknown format `" + flags.format + "` (expected text or json)");
        if (flags.decimal && (*flags.decimal < 0 || *flags.decimal > 1000))
            throw Error(Errc::SyntaxError, "--decimal must be between 0 and 1000");
        const bool json = flags.format == "json";
        const Endomorphism& f = problem.map;
        const auto& opt = problem.options;
        std::ostringstream os;
        Json j{{"command", command}, {"map", map_json(f)}};

        if (command == "height") {
            if (!json) detail::map_text(os, f);
            Json pts = Json::array();
            for (const auto* np : detail::selected_points(problem, flags)) {
                const std::size_t h = naive_height(np->point);
                if (json)
                    pts.push_back({{"name", np->name}, {"point", point_json(np->point)}, {"height", h}});
                else
                    os << np->name << " " << to_string(np->point) << ": height " << h << "\n";
            }
            j["points"] = std::move(pts);
        } else if (command == "hhat") {
            const std::size_t n = detail::pick(flags.iters, opt.iters, kDefaultIters);
            if (n == 0) throw Error(Errc::SyntaxError, "hhat needs --iters >= 1");
            Json pts = Json::array();
            for (const auto* np : detail::selected_points(problem, flags)) {
                const HeightInterval i = hhat_interval(f, np->point, n);
                if (json) {
                    pts.push_back({{"name", np->name}, {"point", point_json(np->point)}, {"interval", interval_json(i, flags.decimal)}});
                } else {
                    os << np->name << " " << to_string(np->point) << ": hhat in [" << i.lo << ", " << i.hi << "]"
                       << " (n = " << n << ", C = " << i.defect_used << ")";
                    if (flags.decimal)
                        os << "  approx [" << to_decimal(i.lo, *flags.decimal) << ", " << to_decimal(i.hi, *flags.decimal) << "]";
                    os << "\n";
                }
            }
            j["iters"] = n;
            j["points"] = std::move(pts);
        } else if (command == "classify") {
            const std::size_t budget = detail::pick(flags.budget, opt.budget, kDefaultBudget);
            if (budget == 0) throw Error(Errc::SyntaxError, "classify needs --budget >= 1");
            Json pts = Json::array();
            for (const auto* np : detail::selected_points(problem, flags)) {
                const Verdict v = classify(f, np->point, budget);
                if (json) {
                    pts.push_back({{"name", np->name}, {"point", point_json(np->point)}, {"verdict", verdict_json(v, flags.decimal)}});
                } else {
                    os << np->name << " " << to_string(np->point) << ": " << to_string(v);
                    if (const auto* p = std::get_if<PositiveCertified>(&v)) os << detail::approx(p->lower, flags.decimal);
                    os << "\n";
                }
            }
            j["budget"] = budget;
            j["points"] = std::move(pts);
        } else if (command == "orbit") {
            const std::size_t n = detail::pick(flags.iters, opt.iters, kDefaultIters);
            Json pts = Json::array();
            for (const auto* np : detail::selected_points(problem, flags)) {
                const auto o = orbit(f, np->point, n);
                Json arr = Json::array();
                if (!json) os << np->name << ":\n";
                for (std::size_t m = 0; m < o.size(); ++m) {
                    if (json)
                        arr.push_back(point_json(o[m]));
                    else
                        os << "  f^" << m << " = " << to_string(o[m]) << "\n";
                }
                if (json) pts.push_back({{"name", np->name}, {"orbit", std::move(arr)}});
            }
            j["iters"] = n;
            j["points"] = std::move(pts);
        } else if (command == "gap-scan") {
            PointEnumSpec spec;
            spec.k = f.k();
            spec.max_deg = detail::pick(flags.max_deg, opt.max_deg, kDefaultMaxDeg);
            spec.coeff_bound = detail::pick(flags.coeff_bound, opt.coeff_bound, kDefaultCoeffBound);
            const std::size_t budget = detail::pick(flags.budget, opt.budget, kDefaultBudget);
            const std::size_t threads = detail::pick(flags.threads, opt.threads, 1);
            if (budget == 0) throw Error(Errc::SyntaxError, "gap-scan needs --budget >= 1");
            if (threads == 0 || threads > 1024) throw Error(Errc::SyntaxError, "--threads must be between 1 and 1024");
            const ScanReport r = scan(f, spec, budget, static_cast<unsigned>(threads));
            if (json) {
                j["spec"] = {{"k", spec.k}, {"max_deg", spec.max_deg}, {"coeff_bound", spec.coeff_bound}};
                j["budget"] = budget;
                const Json report = scan_report_json(r, flags.decimal);
                for (const auto& [key, value] : report.items()) j[key] = value;
            } else {
                detail::map_text(os, f);
                os << "scan: degree <= " << spec.max_deg << ", coefficients in [-" << spec.coeff_bound << ", "
                   << spec.coeff_bound << "], budget " << budget << "\n";
                os << "total " << r.total << ": preperiodic " << r.preperiodic << ", positive certified "
                   << r.positive_certified << ", undecided " << r.undecided << "\n";
                os << "min positive lower bound: "
                   << (r.min_positive_lower ? to_string(*r.min_positive_lower) + detail::approx(*r.min_positive_lower, flags.decimal)
                                            : std::string("none"))
                   << "\n";
                for (const auto* e : r.undecided_entries())
                    os << "undecided " << to_string(e->point) << ": " << to_string(e->verdict) << "\n";
                os << "elapsed " << r.wall_seconds << " s with " << r.workers << " worker(s)\n";
            }
        } else if (command == "isotrivial") {
            const FixedPointData data = fixed_point_data(f);
            const MultiplierInvariants inv = multiplier_invariants(f);
            const IsotrivialityVerdict v = isotriviality_verdict(f, inv);
            if (json) {
                const Json report = isotriviality_json(data, inv, v);
                for (const auto& [key, value] : report.items()) j[key] = value;
            } else {
                detail::map_text(os, f);
                os << "fixed points: Phi(z) = " << to_string(data.phi) << ", infinity "
                   << (data.infinity_fixed ? "fixed" : "not fixed") << "\n";
                for (std::size_t i = 1; i <= inv.sigma.size(); ++i) os << "sigma" << i << " = " << to_string(inv[i]) << "\n";
                if (inv.sigma.size() == 3)
                    os << "index relation sigma3 = sigma1 - 2: "
                       << (inv[3] == inv[1] - RationalFunc(2) ? "holds" : "FAILS") << "\n";
                os << "verdict: " << to_string(v) << "\n";
            }
        } else {
            throw Error(Errc::SyntaxError, "unknown command `" + command + "`");
        }

        res.output = json ? j.dump(2) + "\n" : os.str();
    } catch (const Error& e) {
        res.exit_code = e.code() == Errc::Internal ? 2 : 1;
        res.error = std::string("error: ") + e.what() + "\n";
    } catch (const std::bad_alloc&) {
        res.exit_code = 2;
        res.error = "error: out of memory\n";
    } catch (const std::exception& e) {
        res.exit_code = 2;
        res.error = std::string("internal error: ") + e.what() + "\n";
    }
    return res;
}

/// Full command line: `ffheight <command> <problem-file> [flags]`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified canonical heights for endomorphisms of P^k over Q(t)", "ffheight"};
    app.require_subcommand(1);
    CommandFlags flags;
    std::string file;
    std::size_t iters = 0, budget = 0, max_deg = 0, coeff_bound = 0, threads = 0;
    int decimal = 0;
    std::string point;

    static const std::map<std::string, std::string> help{
        {"height", "naive heights of the map and points"},
        {"hhat", "certified canonical height interval after --iters steps"},
        {"classify", "preperiodic, positive or undecided within --budget steps"},
        {"orbit", "exact orbit f^0 .. f^iters"},
        {"gap-scan", "classify every point up to degree H and coefficient bound N"},
        {"isotrivial", "multiplier invariants and isotriviality verdict (P^1 only)"},
    };
    for (const auto& name : command_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("problem", file, "problem file")->required();
        sub->add_option("--format", flags.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--point", point, "only this named point");
        sub->add_option("--decimal", decimal, "add approximate decimal renderings with this many digits")
            ->check(CLI::Range(0, 1000));
        if (name == "hhat" || name == "orbit") sub->add_option("--iters", iters, "iterate count");
        if (name == "classify" || name == "gap-scan") sub->add_option("--budget", budget, "iterations per point");
        if (name == "gap-scan") {
            sub->add_option("--max-deg", max_deg, "maximum coordinate degree H");
            sub->add_option("--coeff-bound", coeff_bound, "coefficient bound N");
            sub->add_option("--threads", threads, "worker threads");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? 0 : 1;
    }
    auto* sub = app.get_subcommands().front();
    auto given = [&](const char* opt) { return sub->get_option_no_throw(opt) && sub->count(opt) > 0; };
    if (given("--iters")) flags.iters = iters;
    if (given("--budget")) flags.budget = budget;
    if (given("--max-deg")) flags.max_deg = max_deg;
    if (given("--coeff-bound")) flags.coeff_bound = coeff_bound;
    if (given("--threads")) flags.threads = threads;
    if (given("--decimal")) flags.decimal = decimal;
    if (given("--point")) flags.point = point;

    std::ifstream in(file, std::ios::binary);
    if (!in) {
        err << "error: cannot read `" << file << "`\n";
        return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ProblemFile problem;
    try {
        problem = parse_problem(buf.str());
    } catch (const ParseError& e) {
        err << file << ":" << e.location().line << ":" << e.location().column << ": error: " << errc_name(e.code())
            << ": " << e.message() << "\n";
        return 1;
    } catch (const Error& e) {
        err << file << ": error: " << e.what() << "\n";
        return e.code() == Errc::Internal ? 2 : 1;
    } catch (const std::exception& e) {
        err << file << ": internal error: " << e.what() << "\n";
        return 2;
    }
    const CommandResult r = run_command(sub->get_name(), problem, flags);
    out << r.output;
    err << r.error;
    return r.exit_code;
}

}  // namespace ffh

#endif  // FFH_CLI_HPP
