#include "heun/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "heun/combinatorics.hpp"
#include "heun/connection.hpp"
#include "heun/perturbative.hpp"
#include "heun/validation.hpp"
#include "json.hpp"

namespace heun {

using nlohmann::json;

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty number");
    auto to_double = [&](const std::string& t) {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad number '" + text + "'");
        return v;
    };
    if (s.back() != 'i') return to_double(s);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    auto imag_of = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_double(t);
    };
    if (split == std::string::npos) return {0.0, imag_of(s)};
    return {to_double(s.substr(0, split)), imag_of(s.substr(split))};
}

namespace {

struct SpecFlags {
    std::string family = "rche";
    std::optional<std::string> theta0, theta1, thetat, thetainf, thetastar, omega, lambda;
};

struct RunConfig {
    std::string method = "cf";
    double tol = 1e-12;
    long max_depth = 1L << 20;
    long K = 0;
    std::string precision = "auto";
    std::string output = "text";
    unsigned long seed = 0;
    std::string golden_out;
    bool allow_strong_coupling = false;
    int order = 3;
    int n = 3;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Complex flag_value(const std::optional<std::string>& v, const char* name) {
    if (!v) throw UsageError(std::string("--") + name + " is required for this family");
    try {
        return parse_complex(*v);
    } catch (const std::exception&) {
        throw UsageError(std::string("--") + name + ": cannot parse '" + *v + "'");
    }
}

EquationSpec build_spec(const SpecFlags& f) {
    Family fam;
    try {
        fam = parse_family(f.family);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const Complex t0 = flag_value(f.theta0, "theta0"), t1 = flag_value(f.theta1, "theta1");
    auto forbid = [&](const std::optional<std::string>& v, const char* name) {
        if (v) throw UsageError(std::string("--") + name + " does not apply to family " + f.family);
    };
    switch (fam) {
        case Family::Hypergeometric:
            forbid(f.omega, "omega");
            forbid(f.lambda, "lambda");
            forbid(f.thetat, "thetat");
            forbid(f.thetastar, "thetastar");
            return EquationSpec::hypergeometric(t0, t1, flag_value(f.thetainf, "thetainf"));
        case Family::RCHE:
            forbid(f.thetat, "thetat");
            forbid(f.thetainf, "thetainf");
            forbid(f.thetastar, "thetastar");
            return EquationSpec::rche(t0, t1, flag_value(f.omega, "omega"), flag_value(f.lambda, "lambda"));
        case Family::CHE:
            forbid(f.thetat, "thetat");
            forbid(f.thetainf, "thetainf");
            return EquationSpec::che(t0, t1, flag_value(f.thetastar, "thetastar"), flag_value(f.omega, "omega"),
                                     flag_value(f.lambda, "lambda"));
        case Family::Heun:
            forbid(f.thetastar, "thetastar");
            return EquationSpec::heun(t0, t1, flag_value(f.thetat, "thetat"), flag_value(f.thetainf, "thetainf"),
                                      flag_value(f.omega, "omega"), flag_value(f.lambda, "lambda"));
    }
    throw UsageError("unknown family");
}

RouteOptions route_options(const RunConfig& c) {
    RouteOptions o;
    o.tol = c.tol;
    o.max_depth = c.max_depth;
    o.K = c.K;
    o.allow_strong_coupling = c.allow_strong_coupling;
    if (c.precision == "double") o.precision = Precision::Double;
    if (c.precision == "high") o.precision = Precision::High;
    return o;
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmtc(Complex z) { return fmt17(z.real()) + (std::signbit(z.imag()) ? "" : "+") + fmt17(z.imag()) + "i"; }

json params_json(const EquationSpec& s) {
    json p;
    p["theta0"] = cjson(s.theta0);
    p["theta1"] = cjson(s.theta1);
    if (s.theta_t) p["theta_t"] = cjson(*s.theta_t);
    if (s.theta_inf) p["theta_inf"] = cjson(*s.theta_inf);
    if (s.theta_star) p["theta_star"] = cjson(*s.theta_star);
    if (s.family != Family::Hypergeometric) {
        p["omega"] = cjson(s.omega);
        p["lambda"] = cjson(s.lambda);
    }
    return p;
}

json config_json(const RunConfig& c, const std::string& command) {
    json j;
    if (command == "connect" || command == "verify") {
        j["method"] = c.method;
        j["tol"] = c.tol;
        j["max_depth"] = c.max_depth;
        j["K"] = c.K;
        j["precision"] = c.precision;
        j["allow_strong_coupling"] = c.allow_strong_coupling;
    }
    if (command == "expand") j["order"] = c.order;
    if (command == "walks") j["n"] = c.n;
    j["output"] = c.output;
    j["seed"] = c.seed;
    return j;
}

std::string text_params(const EquationSpec& s) {
    std::string t = "family " + std::string(family_name(s.family)) + "\n";
    auto add = [&](const char* name, Complex v) { t += std::string(name) + " " + fmtc(v) + "\n"; };
    add("theta0", s.theta0);
    add("theta1", s.theta1);
    if (s.theta_t) add("theta_t", *s.theta_t);
    if (s.theta_inf) add("theta_inf", *s.theta_inf);
    if (s.theta_star) add("theta_star", *s.theta_star);
    if (s.family != Family::Hypergeometric) {
        add("omega", s.omega);
        add("lambda", s.lambda);
    }
    return t;
}

const char* kEntryKeys[2][2] = {{"++", "+-"}, {"-+", "--"}};

struct Rendered {
    std::string body;
    json doc;
    int code = 0;
};

Rendered cmd_connect(const EquationSpec& spec, const RunConfig& cfg) {
    Method method;
    try {
        method = parse_method(cfg.method);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const ConnectionMatrix m = connection_matrix(spec, method, route_options(cfg));
    Rendered r;
    json c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[kEntryKeys[i][j]] = cjson(m.entries[i][j]);
    r.doc = {{"schema", "heun-connect/1"},
             {"command", "connect"},
             {"family", std::string(family_name(spec.family))},
             {"params", params_json(spec)},
             {"C", c},
             {"det", cjson(m.det())},
             {"det_residual", m.det_residual()},
             {"method", std::string(method_name(m.method))},
             {"depth", m.depth_or_K},
             {"est_error", m.err_estimate},
             {"precision", std::string(to_string(m.precision))},
             {"config", config_json(cfg, "connect")}};
    if (cfg.output == "json") {
        r.body = r.doc.dump(2) + "\n";
    } else if (cfg.output == "csv") {
        r.body = "entry,re,im\n";
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.body += std::string(kEntryKeys[i][j]) + "," + fmt17(m.entries[i][j].real()) + "," +
                          fmt17(m.entries[i][j].imag()) + "\n";
        r.body += "det," + fmt17(m.det().real()) + "," + fmt17(m.det().imag()) + "\n";
    } else {
        r.body = text_params(spec);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.body += "C" + std::string(kEntryKeys[i][j]) + " " + fmtc(m.entries[i][j]) + "\n";
        r.body += "det " + fmtc(m.det()) + "\n";
        r.body += "det_residual " + fmt17(m.det_residual()) + "\n";
        r.body += "method " + std::string(method_name(m.method)) + "\n";
        r.body += "depth " + std::to_string(m.depth_or_K) + "\n";
        r.body += "est_error " + fmt17(m.err_estimate) + "\n";
        r.body += "precision " + std::string(to_string(m.precision)) + "\n";
    }
    return r;
}

Rendered cmd_verify(const EquationSpec& spec, const RunConfig& cfg) {
    ValidationConfig vc;
    vc.route = route_options(cfg);
    const ValidationReport rep = full_report(spec, vc);
    Rendered r;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"status", std::string(status_name(c.status))},
                          {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"runtime_s", c.runtime_s},
                          {"detail", c.detail}});
    r.doc = {{"schema", "heun-connect/1"},
             {"command", "verify"},
             {"family", std::string(family_name(spec.family))},
             {"params", params_json(spec)},
             {"checks", checks},
             {"all_pass", rep.all_pass()},
             {"config", config_json(cfg, "verify")}};
    auto csv_field = [](std::string s) {
        for (char& ch : s)
            if (ch == ',' || ch == '\n') ch = ';';
        return s;
    };
    if (cfg.output == "json") {
        r.body = r.doc.dump(2) + "\n";
    } else if (cfg.output == "csv") {
        r.body = "name,status,residual,tolerance,runtime_s,detail\n";
        for (const auto& c : rep.checks)
            r.body += c.name + "," + std::string(status_name(c.status)) + "," + fmt17(c.residual) + "," +
                      fmt17(c.tolerance) + "," + fmt17(c.runtime_s) + "," + csv_field(c.detail) + "\n";
    } else {
        r.body = text_params(spec);
        for (const auto& c : rep.checks) {
            r.body += std::string(status_name(c.status)) + " " + c.name + " residual " + fmt17(c.residual) +
                      " tol " + fmt17(c.tolerance);
            if (!c.detail.empty()) r.body += " (" + c.detail + ")";
            r.body += "\n";
        }
        r.body += rep.all_pass() ? "all checks pass\n" : "some checks failed\n";
    }
    r.code = rep.all_pass() ? 0 : 1;
    return r;
}

Rendered cmd_expand(const EquationSpec& spec, const RunConfig& cfg) {
    if (cfg.order < 1 || cfg.order > kMaxPerturbativeOrder)
        throw UsageError("--order must lie in [1, " + std::to_string(kMaxPerturbativeOrder) + "]");
    const auto c = c_coefficients(spec, cfg.order);
    std::vector<std::optional<Complex>> closed(c.size());
    if (spec.family == Family::RCHE) {
        closed[0] = c1_closed_rche(spec);
        if (c.size() > 1) closed[1] = c2_closed_rche(spec);
    } else if (spec.family == Family::Heun) {
        closed[0] = c1_closed_he(spec);
    }
    // coefficients of ln(C / F_cl): prefactor contributions added to ln a_infinity
    std::vector<Complex> lnc = c;
    if (spec.family == Family::CHE) lnc[0] += 0.5;
    if (spec.family == Family::Heun)
        for (std::size_t n = 1; n <= lnc.size(); ++n) lnc[n - 1] -= (0.5 - *spec.theta_t) / double(n);

    Rendered r;
    json rows = json::array();
    for (std::size_t n = 1; n <= c.size(); ++n) {
        json row = {{"n", n}, {"c_n", cjson(c[n - 1])}, {"lnC_n", cjson(lnc[n - 1])}};
        if (closed[n - 1]) {
            row["closed"] = cjson(*closed[n - 1]);
            row["diff"] = std::abs(c[n - 1] - *closed[n - 1]);
        }
        rows.push_back(row);
    }
    r.doc = {{"schema", "heun-connect/1"},
             {"command", "expand"},
             {"family", std::string(family_name(spec.family))},
             {"params", params_json(spec)},
             {"note", "c_n: ln a_inf coefficients; lnC_n: ln(C/F_cl) coefficients"},
             {"coefficients", rows},
             {"config", config_json(cfg, "expand")}};
    if (cfg.output == "json") {
        r.body = r.doc.dump(2) + "\n";
    } else {
        const bool csv = cfg.output == "csv";
        const std::string sep = csv ? "," : " ";
        r.body = csv ? "" : text_params(spec);
        r.body += csv ? "n,c_n_re,c_n_im,lnC_n_re,lnC_n_im,closed_re,closed_im,diff\n"
                      : "n c_n(ln a_inf) lnC_n(ln C/F_cl) closed diff\n";
        for (std::size_t n = 1; n <= c.size(); ++n) {
            auto cell = [&](Complex z) { return csv ? fmt17(z.real()) + "," + fmt17(z.imag()) : fmtc(z); };
            r.body += std::to_string(n) + sep + cell(c[n - 1]) + sep + cell(lnc[n - 1]) + sep;
            if (closed[n - 1])
                r.body += cell(*closed[n - 1]) + sep + fmt17(std::abs(c[n - 1] - *closed[n - 1]));
            else
                r.body += csv ? ",," : "- -";
            r.body += "\n";
        }
    }
    return r;
}

std::string composition_label(const Composition& mu) {
    std::string s = "(";
    for (std::size_t i = 0; i < mu.parts.size(); ++i) s += (i ? "," : "") + std::to_string(mu.parts[i]);
    return s + ")";
}

Rendered cmd_walks(const RunConfig& cfg) {
    const auto comps = compositions(cfg.n);
    std::optional<std::map<Composition, std::uint64_t>> counts;
    if (cfg.n <= kMaxEnumerationSize) counts = enumerate_walk_types(cfg.n);
    Rendered r;
    json rows = json::array();
    std::uint64_t total = 0;
    bool all_equal = true;
    for (const auto& mu : comps) {
        const std::uint64_t f = n_mu(mu);
        total += f;
        json row = {{"mu", mu.parts}, {"N_mu", f}};
        if (counts) {
            const std::uint64_t e = counts->count(mu) ? counts->at(mu) : 0;
            row["enumerated"] = e;
            row["equal"] = e == f;
            all_equal = all_equal && e == f;
        }
        rows.push_back(row);
    }
    const std::uint64_t binom = binomial(2 * cfg.n, cfg.n);
    r.doc = {{"schema", "heun-connect/1"},
             {"command", "walks"},
             {"n", cfg.n},
             {"types", rows},
             {"sum", total},
             {"binomial", binom},
             {"sum_matches", total == binom},
             {"config", config_json(cfg, "walks")}};
    if (counts) r.doc["all_equal"] = all_equal;
    if (cfg.output == "json") {
        r.body = r.doc.dump(2) + "\n";
    } else {
        const bool csv = cfg.output == "csv";
        r.body = csv ? "mu,N_mu,enumerated,equal\n" : "mu N_mu enumerated equal\n";
        const std::string sep = csv ? "," : " ";
        for (const auto& row : rows) {
            Composition mu{row["mu"].get<std::vector<int>>()};
            std::string label = composition_label(mu);
            if (csv) label = "\"" + label + "\"";
            r.body += label + sep + std::to_string(row["N_mu"].get<std::uint64_t>()) + sep;
            if (counts)
                r.body += std::to_string(row["enumerated"].get<std::uint64_t>()) + sep +
                          (row["equal"].get<bool>() ? "yes" : "no");
            else
                r.body += "-" + sep + "-";
            r.body += "\n";
        }
        if (!csv)
            r.body += "sum " + std::to_string(total) + " binom(" + std::to_string(2 * cfg.n) + "," +
                      std::to_string(cfg.n) + ") " + std::to_string(binom) + "\n";
    }
    return r;
}

void write_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write " + path);
        f << content;
        if (!f) throw UsageError("cannot write " + path);
    }
    std::filesystem::rename(tmp, path);
}

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
    cmd->add_option("--family", f.family, "hyp | rche | che | heun")
        ->check(CLI::IsMember({"hyp", "hypergeometric", "rche", "che", "heun", "he"}));
    cmd->add_option("--theta0", f.theta0, "exponent at 0 (real or a+bi)");
    cmd->add_option("--theta1", f.theta1, "exponent at 1");
    cmd->add_option("--thetat", f.thetat, "exponent at t (heun)");
    cmd->add_option("--thetainf", f.thetainf, "exponent at infinity (heun, hyp)");
    cmd->add_option("--thetastar", f.thetastar, "irregular exponent (che)");
    cmd->add_option("--omega", f.omega, "accessory parameter");
    cmd->add_option("--lambda", f.lambda, "coupling (1/t for heun)");
}

void add_run_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--tol", c.tol, "route tolerance")->capture_default_str();
    cmd->add_option("--max-depth", c.max_depth, "largest continued-fraction / recurrence depth")->capture_default_str();
    cmd->add_option("--K", c.K, "fixed truncation for recurrence, Schafke-Schmidt and Wronskian (0 = adaptive)")
        ->capture_default_str();
    cmd->add_option("--precision", c.precision, "auto | double | high")
        ->check(CLI::IsMember({"auto", "double", "high"}))
        ->capture_default_str();
    cmd->add_flag("--allow-strong-coupling", c.allow_strong_coupling, "lift the weak-coupling gate");
}

void add_output_flags(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--output", c.output, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "random seed (echoed)")->capture_default_str();
    cmd->add_option("--golden-out", c.golden_out, "also write the JSON document to this path");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connection coefficients of Heun-class equations", "heun-connect"};
    app.require_subcommand(1);
    SpecFlags sf;
    RunConfig cfg;

    auto* connect = app.add_subcommand("connect", "connection matrix between the Frobenius bases at 0 and 1");
    add_spec_flags(connect, sf);
    add_run_flags(connect, cfg);
    add_output_flags(connect, cfg);
    connect->add_option("--method", cfg.method, "cf | recurrence | ss | wronskian")
        ->check(CLI::IsMember({"cf", "recurrence", "ss", "wronskian"}))
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the validation report");
    add_spec_flags(verify, sf);
    add_run_flags(verify, cfg);
    add_output_flags(verify, cfg);

    auto* expand = app.add_subcommand("expand", "perturbative coefficients of ln a_inf");
    add_spec_flags(expand, sf);
    add_output_flags(expand, cfg);
    expand->add_option("--order", cfg.order, "highest order N")->capture_default_str();

    auto* walks = app.add_subcommand("walks", "staircase-walk type counts");
    add_output_flags(walks, cfg);
    walks->add_option("--n", cfg.n, "walk size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) out << sub->help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        Rendered r;
        if (*walks) {
            r = cmd_walks(cfg);
        } else {
            const EquationSpec spec = build_spec(sf);
            if (*connect) r = cmd_connect(spec, cfg);
            if (*verify) r = cmd_verify(spec, cfg);
            if (*expand) r = cmd_expand(spec, cfg);
        }
        if (!cfg.golden_out.empty()) write_atomically(cfg.golden_out, r.doc.dump(2) + "\n");
        out << r.body << std::flush;
        return r.code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        const bool usage = e.kind() == ErrorKind::SizeError || e.kind() == ErrorKind::FamilyFieldError;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace heun
