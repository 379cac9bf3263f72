// Copyright 2026 The catgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "catgate/errors.h"
#include "catgate/experiment.h"

namespace catgate::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

/// Whole-string decimal; nullopt on trailing garbage.
std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

double require_number(std::string_view s, std::string_view what) {
    auto v = to_double(s);
    if (!v) {
        throw ConfigError(std::string(what) + ": expected a number, got " + quoted(s));
    }
    return *v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

}  // namespace

int exit_code_for_kind(std::string_view kind) {
    if (kind == "ok") {
        return kExitOk;
    }
    if (kind == "DegeneratePhase" || kind == "InfeasibleCondition") {
        return kExitSolver;
    }
    if (kind == "ConfigError") {
        return kExitConfig;
    }
    return kExitSimulation;
}

double parse_angle(std::string_view text) {
    const std::string_view s = trim(text);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        return require_number(s, "angle");
    }
    // [sign][coefficient][*]pi[/divisor]
    std::string_view head = trim(s.substr(0, pi_pos));
    double sign = 1.0;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
        sign = head.front() == '-' ? -1.0 : 1.0;
        head = trim(head.substr(1));
    }
    if (!head.empty() && head.back() == '*') {
        head = trim(head.substr(0, head.size() - 1));
    }
    const double coeff = head.empty() ? 1.0 : require_number(head, "angle " + quoted(s));
    double divisor = 1.0;
    std::string_view tail = trim(s.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') {
            throw ConfigError("angle: cannot parse " + quoted(s));
        }
        divisor = require_number(tail.substr(1), "angle " + quoted(s));
        if (divisor == 0.0) {
            throw ConfigError("angle: division by zero in " + quoted(s));
        }
    }
    return sign * coeff * std::numbers::pi / divisor;
}

Complex parse_complex(std::string_view text) {
    std::string_view s = trim(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        const auto parts = split(s.substr(1, s.size() - 2), ',');
        if (parts.size() != 2) {
            throw ConfigError("complex: expected (re,im), got " + quoted(s));
        }
        return {require_number(parts[0], "complex real part"), require_number(parts[1], "complex imaginary part")};
    }
    if (s.empty() || (s.back() != 'i' && s.back() != 'j')) {
        return {require_number(s, "complex"), 0.0};
    }
    const std::string_view body = s.substr(0, s.size() - 1);
    // The imaginary part starts at the last sign that is not an exponent sign.
    std::size_t split_at = 0;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    const std::string_view re_text = trim(body.substr(0, split_at));
    std::string_view im_text = trim(body.substr(split_at));
    double im = 1.0;
    if (im_text.empty() || im_text == "+") {
        im = 1.0;
    } else if (im_text == "-") {
        im = -1.0;
    } else {
        im = require_number(im_text, "complex imaginary part");
    }
    const double re = re_text.empty() ? 0.0 : require_number(re_text, "complex real part");
    return {re, im};
}

// ---------------------------------------------------------------------------
// Config

namespace {

const std::set<std::string, std::less<>> kKeys = {
    "gate",   "alpha",      "phi",         "r",           "Gamma",          "t_Gamma", "beta",
    "variant", "even_n",    "detector",    "window",      "homodyne_q",     "x",       "y",
    "c11",    "c10",        "c01",         "c00",         "cutoffs",        "ancilla_cutoff",
    "sweep_axis", "sweep_values", "threads", "out"};

struct Entry {
    std::string value;
    int line;
};

class Fields {
  public:
    Fields(std::map<std::string, Entry, std::less<>> entries, std::string source)
        : entries_(std::move(entries)), source_(std::move(source)) {}

    bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

    [[noreturn]] void fail(std::string_view key, const std::string &msg) const {
        auto it = entries_.find(key);
        std::ostringstream out;
        out << source_;
        if (it != entries_.end()) {
            out << ":" << it->second.line;
        }
        out << ": field " << quoted(key) << ": " << msg;
        throw ConfigError(out.str());
    }

    [[noreturn]] void missing(std::string_view key, std::string_view why = "") const {
        std::string msg = source_ + ": missing required field " + quoted(key);
        if (!why.empty()) {
            msg += " (" + std::string(why) + ")";
        }
        throw ConfigError(msg);
    }

    const std::string &raw(std::string_view key) const { return entries_.find(key)->second.value; }

    template <class F>
    auto convert(std::string_view key, F &&f) const {
        try {
            return f(raw(key));
        } catch (const ConfigError &e) {
            fail(key, e.what());
        }
    }

    double number(std::string_view key) const {
        const double v = convert(key, [&](const std::string &s) { return require_number(s, "value"); });
        if (!std::isfinite(v)) {
            fail(key, "must be finite");
        }
        return v;
    }

    double angle(std::string_view key) const {
        const double v = convert(key, [](const std::string &s) { return parse_angle(s); });
        if (!std::isfinite(v)) {
            fail(key, "must be finite");
        }
        return v;
    }

    Complex complex(std::string_view key) const {
        const Complex v = convert(key, [](const std::string &s) { return parse_complex(s); });
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            fail(key, "must be finite");
        }
        return v;
    }

    int integer(std::string_view key, int min_value) const {
        const double v = number(key);
        if (v != std::floor(v) || v < min_value || v > 1e9) {
            fail(key, "expected an integer >= " + std::to_string(min_value));
        }
        return static_cast<int>(v);
    }

  private:
    std::map<std::string, Entry, std::less<>> entries_;
    std::string source_;
};

bool is_two_mode(Architecture a) { return a == Architecture::CPhaseFig2 || a == Architecture::CPhaseFig3; }

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text, std::string_view source) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected 'key = value', got " + quoted(line));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (kKeys.find(key) == kKeys.end()) {
            throw ConfigError(where + "unknown field " + quoted(key));
        }
        if (value.empty()) {
            throw ConfigError(where + "field " + quoted(key) + ": empty value");
        }
        if (auto [it, fresh] = entries.try_emplace(key, Entry{value, line_no}); !fresh) {
            throw ConfigError(where + "field " + quoted(key) + ": duplicate (first set on line " +
                              std::to_string(it->second.line) + ")");
        }
    }

    const Fields f(std::move(entries), std::string(source));
    ExperimentConfig cfg;
    CircuitSpec &spec = cfg.spec;

    if (!f.has("gate")) {
        f.missing("gate");
    }
    const auto arch = parse_architecture(f.raw("gate"));
    if (!arch) {
        f.fail("gate", "unknown gate " + quoted(f.raw("gate")) +
                           " (phase_fig1, cphase_fig2, cphase_fig3, hadamard_fig4, hadamard_exact)");
    }
    spec.architecture = *arch;
    const bool hadamard = *arch == Architecture::HadamardFig4 || *arch == Architecture::HadamardExact;

    if (!f.has("alpha")) {
        f.missing("alpha");
    }
    const double alpha = f.number("alpha");
    if (alpha <= 0.0) {
        f.fail("alpha", "must be positive");
    }
    spec.alpha = alpha;
    spec.hadamard.alpha = alpha;

    if (f.has("phi")) {
        spec.phi = f.angle("phi");
        if (hadamard) {
            f.fail("phi", "not used by " + std::string(architecture_name(*arch)));
        }
    } else if (!hadamard) {
        f.missing("phi", "phase shift of the gate");
    }

    if (f.has("r")) {
        spec.r = f.number("r");
        if (spec.r <= 0.0 || spec.r > 0.5) {
            f.fail("r", "tap reflectivity must lie in (0, 0.5]");
        }
    }
    if (f.has("detector")) {
        const auto d = parse_detector(f.raw("detector"));
        if (!d) {
            f.fail("detector", "expected onoff or fock1");
        }
        spec.detector = *d;
    }

    // Hadamard parameters.
    const bool has_g = f.has("Gamma"), has_t = f.has("t_Gamma");
    if (has_g && has_t) {
        f.fail("t_Gamma", "give exactly one of Gamma and t_Gamma");
    }
    for (std::string_view key : {"Gamma", "t_Gamma", "beta"}) {
        if (f.has(key) && *arch != Architecture::HadamardFig4) {
            f.fail(key, "only used by hadamard_fig4");
        }
    }
    for (std::string_view key : {"variant", "even_n"}) {
        if (f.has(key) && *arch != Architecture::HadamardExact) {
            f.fail(key, "only used by hadamard_exact");
        }
    }
    for (std::string_view key : {"window", "homodyne_q"}) {
        if (f.has(key) && !hadamard) {
            f.fail(key, "only used by the hadamard gates");
        }
    }
    if (*arch == Architecture::HadamardFig4) {
        spec.hadamard.variant = HadamardVariant::Approx;
        if (!has_g && !has_t) {
            f.missing("Gamma", "or t_Gamma; exactly one is required");
        }
        if (has_g) {
            spec.hadamard.gamma_weight = f.number("Gamma");
            if (spec.hadamard.gamma_weight <= 0.0) {
                f.fail("Gamma", "must be positive");
            }
        } else {
            spec.hadamard.t_gamma = f.number("t_Gamma");
            if (spec.hadamard.t_gamma <= 0.0 || spec.hadamard.t_gamma >= 1.0) {
                f.fail("t_Gamma", "must lie in (0, 1)");
            }
        }
        spec.hadamard.beta = f.has("beta") ? f.number("beta") : 2.0 * alpha;
        if (spec.hadamard.beta <= 0.0) {
            f.fail("beta", "must be positive");
        }
    }
    if (*arch == Architecture::HadamardExact) {
        spec.hadamard.variant = HadamardVariant::ExactHomodyneP;
        if (f.has("variant")) {
            const std::string &v = f.raw("variant");
            if (v == hadamard_variant_name(HadamardVariant::ExactHomodyneP)) {
                spec.hadamard.variant = HadamardVariant::ExactHomodyneP;
            } else if (v == hadamard_variant_name(HadamardVariant::ExactEvenFock)) {
                spec.hadamard.variant = HadamardVariant::ExactEvenFock;
            } else {
                f.fail("variant", "expected exact_homodyne_p or exact_even_fock");
            }
        }
        spec.hadamard.even_n = f.has("even_n") ? f.integer("even_n", 0) : 2;
        if (spec.hadamard.even_n % 2 != 0) {
            f.fail("even_n", "must be even");
        }
    }
    if (f.has("window")) {
        spec.homodyne_window = f.number("window");
        if (spec.homodyne_window < 0.0) {
            f.fail("window", "must be non-negative");
        }
    }
    if (f.has("homodyne_q")) {
        spec.homodyne_q = f.number("homodyne_q");
    }

    // Input coefficients.
    const bool two = is_two_mode(*arch);
    const std::vector<std::string_view> own = two ? std::vector<std::string_view>{"c11", "c10", "c01", "c00"}
                                                  : std::vector<std::string_view>{"x", "y"};
    const std::vector<std::string_view> other = two ? std::vector<std::string_view>{"x", "y"}
                                                    : std::vector<std::string_view>{"c11", "c10", "c01", "c00"};
    for (std::string_view key : other) {
        if (f.has(key)) {
            f.fail(key, std::string("not an input coefficient of ") + std::string(architecture_name(*arch)));
        }
    }
    const bool any_given = std::any_of(own.begin(), own.end(), [&](std::string_view k) { return f.has(k); });
    for (std::size_t k = 0; k < own.size(); ++k) {
        Complex c = two ? Complex(1.0) : Complex(k == 0 ? 1.0 : 0.0);
        if (any_given) {
            c = f.has(own[k]) ? f.complex(own[k]) : Complex(0.0);
        }
        cfg.coefficients.push_back(c);
    }
    if (std::all_of(cfg.coefficients.begin(), cfg.coefficients.end(), [](Complex c) { return c == Complex(0.0); })) {
        f.fail(own.front(), "input coefficients are all zero");
    }

    if (f.has("cutoffs") && f.raw("cutoffs") != "auto") {
        const auto parts = split(f.raw("cutoffs"), ',');
        const std::size_t modes = two ? 2 : 1;
        if (parts.size() != modes) {
            f.fail("cutoffs", "expected " + std::to_string(modes) + " value(s) or auto");
        }
        for (auto p : parts) {
            const auto v = to_double(p);
            if (!v || *v != std::floor(*v) || *v < 1 || *v > 1e6) {
                f.fail("cutoffs", "expected positive integers, got " + quoted(p));
            }
            spec.signal_cutoffs.push_back(static_cast<int>(*v));
        }
    }
    if (f.has("ancilla_cutoff") && f.raw("ancilla_cutoff") != "auto") {
        spec.ancilla_cutoff = f.integer("ancilla_cutoff", 1);
    }

    if (f.has("sweep_axis") != f.has("sweep_values")) {
        f.missing(f.has("sweep_axis") ? "sweep_values" : "sweep_axis", "sweeps need an axis and values");
    }
    if (f.has("sweep_axis")) {
        cfg.sweep_axis = parse_sweep_axis(f.raw("sweep_axis"));
        if (!cfg.sweep_axis) {
            f.fail("sweep_axis", "expected r, Gamma, phi or alpha");
        }
        if (*cfg.sweep_axis == SweepAxis::Gamma && *arch != Architecture::HadamardFig4) {
            f.fail("sweep_axis", "Gamma sweeps need hadamard_fig4");
        }
        if (*cfg.sweep_axis == SweepAxis::Phi && hadamard) {
            f.fail("sweep_axis", "phi is not a parameter of the hadamard gates");
        }
        for (auto p : split(f.raw("sweep_values"), ',')) {
            const double v = f.convert("sweep_values", [&](const std::string &) {
                return *cfg.sweep_axis == SweepAxis::Phi ? parse_angle(p) : require_number(p, "value");
            });
            if (!std::isfinite(v)) {
                f.fail("sweep_values", "must be finite");
            }
            cfg.sweep_values.push_back(v);
        }
    }
    if (f.has("threads")) {
        cfg.threads = static_cast<unsigned>(f.integer("threads", 0));
    }
    if (f.has("out")) {
        cfg.out = f.raw("out");
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str(), path);
}

bool ExperimentConfig::two_mode() const { return is_two_mode(spec.architecture); }

CoherentRegister ExperimentConfig::input() const {
    // The approximate Hadamard displaces its input by the input amplitude.
    const double amp =
        spec.architecture == Architecture::HadamardFig4 ? spec.hadamard.beta / 2.0 : spec.alpha.real();
    return CoherentRegister(amp, coefficients);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kColumns[] = {"architecture",        "alpha",    "phi",
                                         "r",                   "Gamma",    "q",
                                         "detector_model",      "success_probability",
                                         "fidelity",            "conditional_norm_gain",
                                         "tail_mass_max",       "status"};

std::string format_optional(const std::optional<double> &v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0;  // no "-0"
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string csv_header() {
    std::string out;
    for (auto c : kColumns) {
        out += out.empty() ? "" : ",";
        out += c;
    }
    return out;
}

CsvRow CsvRow::from(const RunReport &report, const CircuitSpec &spec) {
    CsvRow row;
    row.architecture = architecture_name(spec.architecture);
    row.alpha = spec.alpha.real();
    row.phi = spec.phi;
    row.r = spec.r;
    const bool hadamard =
        spec.architecture == Architecture::HadamardFig4 || spec.architecture == Architecture::HadamardExact;
    if (spec.architecture == Architecture::HadamardFig4) {
        if (report.ok()) {
            row.gamma = report.requested_gamma;
        } else if (spec.hadamard.gamma_weight > 0.0) {
            row.gamma = spec.hadamard.gamma_weight;
        }
    }
    if (hadamard && report.ok()) {
        row.q = report.q;
    }
    row.detector_model = detector_name(spec.detector);
    row.success_probability = report.success_probability;
    row.fidelity = report.fidelity_vs_ideal;
    row.conditional_norm_gain = report.conditional_norm_gain;
    row.tail_mass_max = report.diagnostics.max_tail_mass;
    row.status = report.status;
    return row;
}

std::string to_csv_line(const CsvRow &row) {
    std::string out;
    out += row.architecture;
    for (const std::string &v :
         {format_number(row.alpha), format_number(row.phi), format_number(row.r), format_optional(row.gamma),
          format_optional(row.q), row.detector_model, format_number(row.success_probability),
          format_number(row.fidelity), format_number(row.conditional_norm_gain), format_number(row.tail_mass_max),
          row.status}) {
        out += ',';
        out += v;
    }
    return out;
}

CsvRow parse_csv_line(std::string_view line) {
    line = trim(line);
    const auto f = split(line, ',');
    if (f.size() != std::size(kColumns)) {
        throw ConfigError("csv: expected " + std::to_string(std::size(kColumns)) + " fields, got " +
                          std::to_string(f.size()));
    }
    auto num = [&](std::size_t k) {
        const auto v = to_double(f[k]);
        if (!v) {
            throw ConfigError("csv: column " + std::string(kColumns[k]) + ": bad number " + quoted(f[k]));
        }
        return *v;
    };
    auto opt = [&](std::size_t k) { return f[k].empty() ? std::optional<double>() : std::optional<double>(num(k)); };
    CsvRow row;
    row.architecture = f[0];
    row.alpha = num(1);
    row.phi = num(2);
    row.r = num(3);
    row.gamma = opt(4);
    row.q = opt(5);
    row.detector_model = f[6];
    row.success_probability = num(7);
    row.fidelity = num(8);
    row.conditional_norm_gain = num(9);
    row.tail_mass_max = num(10);
    row.status = f[11];
    return row;
}

}  // namespace catgate::cli
