#include "kinfront/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace kinfront {

std::string to_string(Command c) {
    switch (c) {
        case Command::run: return "run";
        case Command::sweep: return "sweep";
        case Command::converge: return "converge";
        case Command::growth: return "growth";
        case Command::calibrate: return "calibrate";
        case Command::check: return "check";
    }
    return "run";
}

Command parse_command(std::string_view name) {
    for (Command c : {Command::run, Command::sweep, Command::converge, Command::growth, Command::calibrate,
                      Command::check}) {
        if (to_string(c) == name) return c;
    }
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

namespace {

std::string join(const std::vector<std::string>& lines) {
    std::string out = "invalid configuration:";
    for (const auto& l : lines) out += "\n  " + l;
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<std::size_t> to_count(std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<bool> to_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "on" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "off" || s == "0" || s == "no") return false;
    return std::nullopt;
}

/// "x1:v1, x2:v2, ..."
std::optional<std::vector<Knot>> to_table(std::string_view s) {
    std::vector<Knot> knots;
    while (!trim(s).empty()) {
        const auto comma = s.find(',');
        const std::string_view item = trim(s.substr(0, comma));
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) return std::nullopt;
        const auto x = to_real(item.substr(0, colon));
        const auto v = to_real(item.substr(colon + 1));
        if (!x || !v) return std::nullopt;
        knots.push_back({*x, *v});
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    if (knots.empty()) return std::nullopt;
    return knots;
}

struct Entry {
    std::string value;
    int line;
};

const std::set<std::string, std::less<>> kRequired = {
    "a0", "beta", "gamma", "s0", "b_lower", "b_upper", "b.kind", "u0.kind", "grid.n_cells", "grid.dt", "grid.t_end",
};

const std::set<std::string, std::less<>> kOptional = {
    "b.value",
    "b.table",
    "u0.value",
    "u0.table",
    "b_infinity",
    "solver.advection",
    "solver.bounds_tol",
    "solver.picard.enabled",
    "solver.picard.max_iters",
    "solver.picard.tol",
    "output.stride",
    "output.plot",
    "fit.t_lo",
    "fit.t_hi",
    "fit.subtract_s0",
    "calibrate.a0_lo",
    "calibrate.a0_hi",
    "calibrate.rel_tol",
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

    std::optional<double> real(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        auto v = to_real(e->value);
        if (!v) mismatch(*e, key, "a real number");
        return v;
    }

    std::optional<std::size_t> count(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        auto v = to_count(e->value);
        if (!v) mismatch(*e, key, "a nonnegative integer");
        return v;
    }

    std::optional<bool> flag(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        auto v = to_bool(e->value);
        if (!v) mismatch(*e, key, "true or false");
        return v;
    }

    std::optional<std::vector<Knot>> table(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        auto v = to_table(e->value);
        if (!v) mismatch(*e, key, "a table 'x1:v1, x2:v2, ...'");
        return v;
    }

    std::optional<std::string> word(std::string_view key) {
        const Entry* e = find(key);
        if (!e) return std::nullopt;
        return e->value;
    }

    int line(std::string_view key) const {
        const Entry* e = find(key);
        return e ? e->line : 0;
    }

    void fail(std::string msg) { problems.push_back(std::move(msg)); }
    void fail_at(std::string_view key, const std::string& msg) {
        problems.push_back("line " + std::to_string(line(key)) + ": " + msg);
    }

    std::vector<std::string> problems;

private:
    const Entry* find(std::string_view key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    void mismatch(const Entry& e, std::string_view key, const char* expected) {
        problems.push_back("line " + std::to_string(e.line) + ": key '" + std::string(key) + "' expects " +
                           expected + ", got '" + e.value + "'");
    }

    std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace

RunManifest parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::vector<std::string> problems;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kRequired.contains(key) && !kOptional.contains(key)) {
            problems.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (auto it = entries.find(key); it != entries.end()) {
            problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key +
                               "' (first defined on line " + std::to_string(it->second.line) + ")");
            continue;
        }
        entries.emplace(key, Entry{value, line_no});
    }

    for (const auto& key : kRequired) {
        if (!entries.contains(key)) problems.push_back("missing required key '" + key + "'");
    }

    Reader in(std::move(entries));
    in.problems = std::move(problems);
    RunManifest m;
    ProblemSpec& spec = m.spec;

    if (auto v = in.real("a0")) spec.a0 = *v;
    if (auto v = in.real("beta")) spec.beta = *v;
    if (auto v = in.real("gamma")) spec.gamma = *v;
    if (auto v = in.real("s0")) spec.s0 = *v;
    if (auto v = in.real("b_lower")) spec.b_lower = *v;
    if (auto v = in.real("b_upper")) spec.b_upper = *v;
    if (auto v = in.real("b_infinity")) spec.b_infinity = *v;

    if (auto kind = in.word("b.kind")) {
        if (*kind == "constant") {
            if (auto v = in.real("b.value")) {
                spec.b = BoundaryDriver::constant(*v);
            } else if (!in.has("b.value")) {
                in.fail_at("b.kind", "b.kind = constant requires b.value");
            }
        } else if (*kind == "table") {
            if (auto t = in.table("b.table")) {
                try {
                    spec.b = BoundaryDriver::table(std::move(*t));
                } catch (const std::invalid_argument& e) {
                    in.fail_at("b.table", e.what());
                }
            } else if (!in.has("b.table")) {
                in.fail_at("b.kind", "b.kind = table requires b.table");
            }
        } else {
            in.fail_at("b.kind", "key 'b.kind' expects constant or table, got '" + *kind + "'");
        }
    }

    if (auto kind = in.word("u0.kind")) {
        if (*kind == "constant") {
            if (auto v = in.real("u0.value")) {
                spec.u0 = InitialProfile::constant(*v);
            } else if (!in.has("u0.value")) {
                in.fail_at("u0.kind", "u0.kind = constant requires u0.value");
            }
        } else if (*kind == "table") {
            if (auto t = in.table("u0.table")) {
                try {
                    spec.u0 = InitialProfile::table(std::move(*t));
                } catch (const std::invalid_argument& e) {
                    in.fail_at("u0.table", e.what());
                }
            } else if (!in.has("u0.table")) {
                in.fail_at("u0.kind", "u0.kind = table requires u0.table");
            }
        } else {
            in.fail_at("u0.kind", "key 'u0.kind' expects constant or table, got '" + *kind + "'");
        }
    }

    if (auto v = in.count("grid.n_cells")) m.grid.n_cells = *v;
    if (auto v = in.real("grid.dt")) m.grid.dt = *v;
    if (auto v = in.real("grid.t_end")) m.grid.t_end = *v;

    if (auto adv = in.word("solver.advection")) {
        if (*adv == "central") {
            m.solver.advection = AdvectionScheme::central;
        } else if (*adv == "upwind") {
            m.solver.advection = AdvectionScheme::upwind;
        } else {
            in.fail_at("solver.advection", "key 'solver.advection' expects central or upwind, got '" + *adv + "'");
        }
    }
    if (auto v = in.real("solver.bounds_tol")) m.solver.bounds_tol = *v;
    {
        PicardOptions picard;
        bool enabled = false;
        if (auto v = in.flag("solver.picard.enabled")) enabled = *v;
        if (auto v = in.count("solver.picard.max_iters")) picard.max_iters = *v;
        if (auto v = in.real("solver.picard.tol")) picard.tol = *v;
        if (enabled) m.solver.picard = picard;
    }

    if (auto v = in.count("output.stride")) m.output_stride = *v;
    if (auto v = in.flag("output.plot")) m.plot = *v;
    if (auto v = in.real("fit.t_lo")) m.fit_t_lo = *v;
    if (auto v = in.real("fit.t_hi")) m.fit_t_hi = *v;
    if (auto v = in.flag("fit.subtract_s0")) m.fit_subtract_s0 = *v;
    if (auto v = in.real("calibrate.a0_lo")) m.calibrate_a0_lo = *v;
    if (auto v = in.real("calibrate.a0_hi")) m.calibrate_a0_hi = *v;
    if (auto v = in.real("calibrate.rel_tol")) m.calibrate_rel_tol = *v;

    if (!in.problems.empty()) throw ConfigError(std::move(in.problems));

    // Structural checks on the numerical setup.
    try {
        m.grid.validate();
    } catch (const std::invalid_argument& e) {
        in.fail(std::string("grid: ") + e.what());
    }
    try {
        m.solver.validate();
    } catch (const std::invalid_argument& e) {
        in.fail(std::string("solver: ") + e.what());
    }
    if (m.output_stride < 1) in.fail_at("output.stride", "output.stride must be at least 1");
    if (!(m.calibrate_a0_lo > 0.0 && m.calibrate_a0_hi > m.calibrate_a0_lo)) {
        in.fail("calibrate: bracket needs 0 < calibrate.a0_lo < calibrate.a0_hi");
    }

    // The zero-drive spec is degenerate but still a well-posed run.
    const bool no_drive = spec.b_upper == 0.0 && spec.b.min_value() == 0.0 && spec.b.max_value() == 0.0;
    for (const Violation& v : admissibility_check(spec)) {
        if (no_drive && v.assumption == Assumption::A2) continue;
        if (no_drive && v.assumption == Assumption::A3 && spec.u0.min_value() == 0.0 && spec.u0.max_value() == 0.0) {
            continue;
        }
        in.fail(to_string(v.assumption) + " " + v.message);
    }
    if (no_drive) m.warnings.push_back("no drive: b is identically zero, (A2) waived");

    if (!in.problems.empty()) throw ConfigError(std::move(in.problems));
    return m;
}

RunManifest load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

namespace {

std::string render_table(std::span<const Knot> knots) {
    std::string out;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_real(knots[i].x) + ":" + format_real(knots[i].value);
    }
    return out;
}

}  // namespace

std::string render_config(const RunManifest& m) {
    const ProblemSpec& spec = m.spec;
    std::ostringstream os;
    os << "a0 = " << format_real(spec.a0) << "\n"
       << "beta = " << format_real(spec.beta) << "\n"
       << "gamma = " << format_real(spec.gamma) << "\n"
       << "s0 = " << format_real(spec.s0) << "\n"
       << "b_lower = " << format_real(spec.b_lower) << "\n"
       << "b_upper = " << format_real(spec.b_upper) << "\n";
    if (spec.b_infinity) os << "b_infinity = " << format_real(*spec.b_infinity) << "\n";
    if (spec.b.kind() == BoundaryDriver::Kind::constant) {
        os << "b.kind = constant\nb.value = " << format_real(spec.b(0.0)) << "\n";
    } else {
        os << "b.kind = table\nb.table = " << render_table(spec.b.knots()) << "\n";
    }
    if (spec.u0.kind() == InitialProfile::Kind::constant) {
        os << "u0.kind = constant\nu0.value = " << format_real(spec.u0(0.0)) << "\n";
    } else {
        os << "u0.kind = table\nu0.table = " << render_table(spec.u0.knots()) << "\n";
    }
    os << "grid.n_cells = " << m.grid.n_cells << "\n"
       << "grid.dt = " << format_real(m.grid.dt) << "\n"
       << "grid.t_end = " << format_real(m.grid.t_end) << "\n"
       << "solver.advection = " << (m.solver.advection == AdvectionScheme::central ? "central" : "upwind") << "\n"
       << "solver.bounds_tol = " << format_real(m.solver.bounds_tol) << "\n"
       << "solver.picard.enabled = " << (m.solver.picard ? "true" : "false") << "\n";
    if (m.solver.picard) {
        os << "solver.picard.max_iters = " << m.solver.picard->max_iters << "\n"
           << "solver.picard.tol = " << format_real(m.solver.picard->tol) << "\n";
    }
    os << "output.stride = " << m.output_stride << "\n"
       << "output.plot = " << (m.plot ? "true" : "false") << "\n"
       << "fit.t_lo = " << format_real(m.fit_t_lo) << "\n"
       << "fit.t_hi = " << format_real(m.fit_t_hi) << "\n"
       << "fit.subtract_s0 = " << (m.fit_subtract_s0 ? "true" : "false") << "\n"
       << "calibrate.a0_lo = " << format_real(m.calibrate_a0_lo) << "\n"
       << "calibrate.a0_hi = " << format_real(m.calibrate_a0_hi) << "\n"
       << "calibrate.rel_tol = " << format_real(m.calibrate_rel_tol) << "\n";
    return os.str();
}

}  // namespace kinfront
