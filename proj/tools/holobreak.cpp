#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "holobreak/errors.hpp"
#include "holobreak/juhl.hpp"
#include "holobreak/rc_transform.hpp"
#include "holobreak/special.hpp"
#include "holobreak/term_algebra.hpp"
#include "holobreak/verify.hpp"

using namespace holobreak;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v.empty()) return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    T x{};
    if (!(is >> x) || !is.eof()) throw ConfigError("invalid value for " + key + ": '" + v + "'");
    return x;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number<int>(key, trim(item)));
    return out;
}

// re | re+imi | re-imi | imi
Complex parse_complex(const std::string& raw) {
    static const std::regex num(R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)");
    static const std::regex full(R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)");
    static const std::regex imag(R"(([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i)");
    std::string s = trim(raw);
    std::smatch m;
    auto coef = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (std::regex_match(s, num)) return {std::stod(s), 0.0};
    if (std::regex_match(s, m, full)) return {std::stod(m[1].str()), coef(m[2].str())};
    if (std::regex_match(s, m, imag)) return {0.0, coef(m[1].str())};
    throw ConfigError("not a complex number: '" + s + "'");
}

std::vector<Complex> parse_point(const std::string& text) {
    std::vector<Complex> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_complex(item));
    return out;
}

Complex complex_arg(const std::vector<std::string>& args, std::size_t k) {
    if (k >= args.size()) throw ConfigError("missing argument " + std::to_string(k));
    const std::string& s = args[k];
    if (s.find('/') != std::string::npos) return parse_param(s).value;
    return parse_complex(s);
}

int int_arg(const std::vector<std::string>& args, std::size_t k) {
    if (k >= args.size()) throw ConfigError("missing argument " + std::to_string(k));
    return parse_number<int>("argument", args[k]);
}

double real_arg(const std::vector<std::string>& args, std::size_t k) {
    Complex z = complex_arg(args, k);
    if (z.imag() != 0) throw DomainError("argument " + std::to_string(k) + " must be real");
    return z.real();
}

void need_args(const std::vector<std::string>& args, std::size_t count, const std::string& usage) {
    if (args.size() != count + 1) throw ConfigError("usage: " + usage);
}

std::vector<Complex> need_point(const std::vector<Complex>& at, std::size_t dim, const std::string& name) {
    if (at.size() != dim) throw ConfigError(name + " needs --at with " + std::to_string(dim) + " coordinates");
    return at;
}

Complex eval_named(const std::vector<std::string>& a, const std::vector<Complex>& at) {
    const std::string& name = a[0];
    if (name == "constant") {
        need_args(a, 1, "constant V");
        return complex_arg(a, 1);
    }
    if (name == "c_ell" || name == "r_ell" || name == "rc_norm") {
        need_args(a, 3, name + " LAMBDA1 LAMBDA2 ELL");
        Complex l1 = complex_arg(a, 1), l2 = complex_arg(a, 2);
        int ell = int_arg(a, 3);
        if (name == "c_ell") return c_ell(l1, l2, ell);
        if (name == "r_ell") return r_ell(l1, l2, ell);
        return rc_operator_norm_sq(real_arg(a, 1), real_arg(a, 2), ell);
    }
    if (name == "b") {
        need_args(a, 1, "b LAMBDA");
        return b_const(complex_arg(a, 1));
    }
    if (name == "psi" || name == "psi_closed") {
        need_args(a, 3, name + " LAMBDA1 LAMBDA2 ELL --at Z1,Z2");
        RCParams<Numeric> p{complex_arg(a, 1), complex_arg(a, 2), int_arg(a, 3)};
        auto z = need_point(at, 2, name);
        if (name == "psi_closed") return evaluate(psi_ktype_closed_form(p).full(), z);
        Complex l3 = p.lambda3();
        return psi_quadrature(p, [&](Complex t) { return std::pow(t + Complex(0, 1), -l3); }, z[0], z[1]);
    }
    if (name == "q_nl") {
        need_args(a, 3, "q_nl N ELL LAMBDA");
        return bernstein_sato_q(int_arg(a, 1), int_arg(a, 2), complex_arg(a, 3));
    }
    if (name == "cone_c" || name == "cone_r" || name == "cone_C" || name == "cone_k" || name == "b_cone" ||
        name == "juhl_norm") {
        need_args(a, 3, name + " N LAMBDA ELL");
        ConeParams p{int_arg(a, 1), real_arg(a, 2), int_arg(a, 3)};
        if (name == "juhl_norm") return juhl_operator_norm_sq(p);
        if (name == "b_cone") return b_cone(p.n, p.lambda);
        auto k = cone_constants(p);
        if (name == "cone_c") return k.c;
        if (name == "cone_r") return k.r;
        if (name == "cone_C") return k.C;
        return k.k;
    }
    if (name == "bergman_k") {
        need_args(a, 2, "bergman_k N LAMBDA");
        return bergman_kernel_constant(int_arg(a, 1), complex_arg(a, 2));
    }
    if (name == "kernel") {
        need_args(a, 3, "kernel N LAMBDA ELL --at ZETA...,TAU'...");
        ConeParams p{int_arg(a, 1), real_arg(a, 2), int_arg(a, 3)};
        auto pt = need_point(at, static_cast<std::size_t>(2 * p.n - 1), name);
        std::vector<Complex> zeta(pt.begin(), pt.begin() + p.n), tau(pt.begin() + p.n, pt.end());
        return relative_kernel(p, zeta, tau);
    }
    throw ConfigError("unknown expression '" + name + "'");
}

void print_value(Complex v, bool json) {
    if (json) {
        nlohmann::ordered_json j{{"value_re", v.real()}, {"value_im", v.imag()}};
        std::cout << j.dump() << "\n";
        return;
    }
    char buf[128];
    if (v.imag() == 0)
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    std::cout << buf << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holobreak: symmetry breaking and holographic transforms, verification harness"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite, l1, l2, lam, ns, report_path, config_path;
    int ell_max = 0, threads = 0, order = 24;
    double tol = NAN, radius = 20;
    bool exact = false, csv = false;
    std::uint64_t seed = 20240917;
    std::string suites_help;
    for (const auto& s : suite_names()) suites_help += (suites_help.empty() ? "" : ", ") + s;
    verify->add_option("suite", suite, suites_help)->required();
    std::map<std::string, CLI::Option*> opts;
    opts["lambda1"] = verify->add_option("--lambda1", l1, "comma-separated values; p/q selects exact mode");
    opts["lambda2"] = verify->add_option("--lambda2", l2, "comma-separated values");
    opts["lambda"] = verify->add_option("--lambda", lam, "comma-separated values");
    opts["n"] = verify->add_option("--n", ns, "comma-separated dimensions");
    opts["ell-max"] = verify->add_option("--ell-max", ell_max, "largest ell in the grid");
    opts["tol"] = verify->add_option("--tol", tol, "override every float tolerance");
    opts["exact"] = verify->add_flag("--exact", exact, "exact rational arithmetic where available");
    opts["seed"] = verify->add_option("--seed", seed, "sample point seed");
    opts["report"] = verify->add_option("--report", report_path, "write the report here instead of stdout");
    opts["csv"] = verify->add_flag("--csv", csv, "CSV instead of JSON lines");
    opts["threads"] = verify->add_option("--threads", threads, "worker threads (0: all cores)");
    opts["order"] = verify->add_option("--order", order, "holographic quadrature order per axis");
    opts["radius"] = verify->add_option("--radius", radius, "holographic truncation radius");
    verify->add_option("--config", config_path, "key=value file with the same keys; flags win");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a sum or a named quantity");
    std::vector<std::string> expr;
    std::string at_text;
    bool json = false;
    eval->add_option("expr", expr, "sum text '(sum ...)' or NAME ARGS...")->required();
    eval->add_option("--at", at_text, "point: comma-separated complex numbers like 0.3+1.2i");
    eval->add_flag("--json", json, "print {value_re, value_im}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    if (verify->parsed()) {
        try {
            SuiteConfig cfg;
            cfg.suite = suite;
            std::map<std::string, std::string> values;
            if (!config_path.empty())
                for (const auto& [k, v] : read_config(config_path)) {
                    if (!opts.count(k)) throw ConfigError("unknown config key '" + k + "'");
                    if (opts[k]->count() == 0) values[k] = v;
                }
            for (const auto& [k, o] : opts)
                if (o->count() > 0) values[k] = k == "exact" ? (exact ? "true" : "false") : k == "csv" ? (csv ? "true" : "false") : o->as<std::string>();
            for (const auto& [k, v] : values) {
                if (k == "lambda1") cfg.lambda1 = parse_param_list(v);
                else if (k == "lambda2") cfg.lambda2 = parse_param_list(v);
                else if (k == "lambda") cfg.lambda = parse_param_list(v);
                else if (k == "n") cfg.n = trim(v).empty() ? std::vector<int>{} : parse_int_list(k, v);
                else if (k == "ell-max") cfg.ell_max = parse_number<int>(k, v);
                else if (k == "tol") cfg.tol = parse_number<double>(k, v);
                else if (k == "exact") cfg.exact = parse_bool(k, v);
                else if (k == "seed") cfg.seed = parse_number<std::uint64_t>(k, v);
                else if (k == "report") report_path = v;
                else if (k == "csv") csv = parse_bool(k, v);
                else if (k == "threads") cfg.threads = parse_number<int>(k, v);
                else if (k == "order") cfg.order = parse_number<int>(k, v);
                else if (k == "radius") cfg.radius = parse_number<double>(k, v);
            }
            if (!std::isnan(cfg.tol) && !(cfg.tol > 0)) throw ConfigError("tolerance must be positive");

            auto rep = run_suite(cfg);
            std::string text = csv ? rep.csv() : rep.json_lines();
            if (report_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(report_path);
                if (!out) throw ConfigError("cannot write report to '" + report_path + "'");
                out << text;
            }
            std::cerr << rep.suite << " (" << rep.mode << "): " << rep.records.size() << " cases, " << rep.passed()
                      << " passed, " << rep.failed() << " failed\n";
            for (const auto& r : rep.records)
                if (!r.pass) {
                    std::cerr << "  FAIL " << r.id;
                    for (const auto& [k, v] : r.params) std::cerr << " " << k << "=" << v;
                    if (!r.note.empty()) std::cerr << " (" << r.note << ")";
                    std::cerr << "\n";
                }
            return rep.ok() ? 0 : kExitFail;
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitFail;
        }
    }

    try {
        std::vector<Complex> at = at_text.empty() ? std::vector<Complex>{} : parse_point(at_text);
        std::string joined;
        for (const auto& e : expr) joined += (joined.empty() ? "" : " ") + e;
        Complex value;
        if (!joined.empty() && joined.front() == '(') {
            auto sum = parse_holosum(joined);
            value = std::visit(
                [&](const auto& f) {
                    if (at.size() != static_cast<std::size_t>(f.arity()))
                        throw ConfigError("--at needs " + std::to_string(f.arity()) + " coordinates");
                    return evaluate(f, at);
                },
                sum);
        } else if (expr.size() == 1 && expr[0].find_first_not_of("+-0123456789.eEi/") == std::string::npos) {
            value = complex_arg(expr, 0);
        } else {
            std::vector<std::string> args;
            for (const auto& e : expr) {
                std::stringstream ss(e);
                for (std::string t; ss >> t;) args.push_back(t);
            }
            value = eval_named(args, at);
        }
        print_value(value, json);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
