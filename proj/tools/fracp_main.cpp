// fracp: variational laboratory for the fractional p-Laplacian on an
// interval with boundary-singular weights.
//
//   fracp <command> [--config FILE] [--key value ...]
//
// Commands: eig, solve, multi, check-weight, hardy, moser, scaling.
// Configuration is a flat key=value file; command-line flags override file
// entries.  The environment variable FRACP_SEED overrides the seed.  Each
// run writes <out>.json (and a CSV next to it for function outputs) and
// prints a one-line summary.  Exit status: 0 converged, 2 unconverged,
// 1 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracp/eigensolver.hpp"
#include "fracp/json_io.hpp"
#include "fracp/nonlinear.hpp"
#include "fracp/shapes.hpp"
#include "fracp/verifiers.hpp"
#include "fracp/weight_classes.hpp"

using nlohmann::json;
using namespace fracp;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    KeyValues kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("malformed config line: " + t);
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues parse_args(int argc, char** argv, int start) {
    KeyValues flags;
    std::optional<std::string> config_path;
    for (int i = start; i < argc; ++i) {
        std::string key = argv[i];
        if (key.rfind("--", 0) != 0) throw UsageError("expected --key, got: " + key);
        key = key.substr(2);
        if (i + 1 >= argc) throw UsageError("missing value for --" + key);
        const std::string value = argv[++i];
        if (key == "config")
            config_path = value;
        else
            flags[key] = value;
    }
    KeyValues kv;
    if (config_path) kv = read_config_file(*config_path);
    for (const auto& [k, v] : flags) kv[k] = v;  // flags win
    return kv;
}

void reject_unknown(const KeyValues& kv, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : kv)
        if (!allowed.count(k)) throw UsageError("unknown key: " + k);
}

double to_double(const KeyValues& kv, const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw UsageError("key " + key + " expects a number, got: " + it->second);
    }
}

long to_long(const KeyValues& kv, const std::string& key, long fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stol(it->second);
    } catch (...) {
        throw UsageError("key " + key + " expects an integer, got: " + it->second);
    }
}

std::string to_string(const KeyValues& kv, const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

WeightSpec parse_weight(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    try {
        if (parts.size() == 2 && parts[0] == "const")
            return WeightSpec::constant(std::stod(parts[1]));
        if (parts.size() == 2 && parts[0] == "power") return WeightSpec::power(std::stod(parts[1]));
        if (parts.size() == 3 && parts[0] == "spower")
            return WeightSpec::scaled_power(std::stod(parts[1]), std::stod(parts[2]));
    } catch (...) {
    }
    throw UsageError("weight must be const:<c>, power:<beta> or spower:<c>:<beta>, got: " + text);
}

struct CommonParams {
    double s, p, a, b;
    int n;
    unsigned long long seed;
    std::string out;
};

CommonParams common_params(const KeyValues& kv) {
    CommonParams c;
    c.s = to_double(kv, "s", 0.5);
    c.p = to_double(kv, "p", 2.0);
    c.a = to_double(kv, "a", -1.0);
    c.b = to_double(kv, "b", 1.0);
    c.n = static_cast<int>(to_long(kv, "n", 128));
    c.out = to_string(kv, "out", "result");
    c.seed = static_cast<unsigned long long>(to_long(kv, "seed", 1));
    if (const char* env = std::getenv("FRACP_SEED")) c.seed = std::strtoull(env, nullptr, 10);
    if (!(c.s > 0.0 && c.s < 1.0)) throw UsageError("s must lie in (0,1)");
    if (!(c.p > 1.0)) throw UsageError("p must exceed 1");
    if (c.n < 3) throw UsageError("n must be at least 3");
    if (!(c.b > c.a)) throw UsageError("interval endpoints must satisfy a < b");
    return c;
}

void check_q_window(double q, double s, double p) {
    const double ps = critical_exponent(1, s, p);
    if (!(q >= 1.0 && q < ps)) throw UsageError("q must lie in [1, p_s^*)");
}

json params_echo(const CommonParams& c) {
    return {{"s", c.s}, {"p", c.p}, {"a", c.a}, {"b", c.b}, {"n", c.n}, {"seed", c.seed}};
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

void write_function_csv(const std::string& path, const DiscreteFunction& u) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::fputs("x,u\n", f);
    for (int i = 0; i < u.grid.n; ++i)
        std::fprintf(f, "%.17g,%.17g\n", u.grid.node(i), u.values[static_cast<std::size_t>(i)]);
    std::fclose(f);
}

int run_eig(const KeyValues& kv) {
    reject_unknown(kv, {"s", "p", "a", "b", "n", "h", "out", "seed", "tol", "maxit"});
    const CommonParams c = common_params(kv);
    const WeightSpec h = parse_weight(to_string(kv, "h", "const:1"));

    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    RayleighConfig cfg;
    cfg.tolerance = to_double(kv, "tol", cfg.tolerance);
    cfg.max_iterations = static_cast<int>(to_long(kv, "maxit", cfg.max_iterations));
    cfg.seed_value = c.seed;

    const EigenResult res = first_eigenpair(E, h, cfg);
    json j = to_json(res);
    j["params"] = params_echo(c);
    write_json(c.out + ".json", j);
    write_function_csv(c.out + ".csv", res.u);
    std::printf("eig: lambda=%.12g residual=%.3g iterations=%d converged=%s\n", res.lambda,
                res.residual, res.iterations, res.converged ? "true" : "false");
    return res.converged ? 0 : 2;
}

ProblemSpec problem_from(const KeyValues& kv, const EnergyAssembly& E) {
    ProblemSpec spec;
    spec.q = to_double(kv, "q", 4.0);
    check_q_window(spec.q, E.s(), E.p());
    spec.lambda = to_double(kv, "lambda", 0.0);
    if (spec.lambda < 0.0) throw UsageError("lambda must be nonnegative");
    if (kv.count("h")) spec.h = parse_weight(kv.at("h"));
    spec.K = parse_weight(to_string(kv, "K", "const:1"));
    if (kv.count("g")) {
        // comma-separated terms <weight>@<q_i>[@<sign>]
        std::stringstream ss(kv.at("g"));
        std::string term;
        while (std::getline(ss, term, ',')) {
            std::vector<std::string> parts;
            std::stringstream ts(term);
            std::string piece;
            while (std::getline(ts, piece, '@')) parts.push_back(piece);
            if (parts.size() < 2 || parts.size() > 3)
                throw UsageError("perturbation must be <weight>@<q_i>[@<sign>], got: " + term);
            PerturbationTerm pt;
            pt.weight = parse_weight(parts[0]);
            try {
                pt.exponent = std::stod(parts[1]);
                pt.sign = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
            } catch (...) {
                throw UsageError("bad perturbation term: " + term);
            }
            spec.perturbations.push_back(std::move(pt));
        }
    }
    attach_certificates(spec, E);
    validate_problem(spec, E);
    return spec;
}

int run_solve(const KeyValues& kv) {
    reject_unknown(kv, {"s", "p", "q", "lambda", "a", "b", "n", "h", "K", "g", "out", "seed",
                        "tol", "maxit"});
    const CommonParams c = common_params(kv);
    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    ProblemSpec spec;
    try {
        spec = problem_from(kv, E);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    SolveConfig cfg;
    cfg.tolerance = to_double(kv, "tol", cfg.tolerance);
    cfg.max_iterations = static_cast<int>(to_long(kv, "maxit", cfg.max_iterations));

    const SolveResult res = spec.q < c.p ? minimize(spec, E, cfg) : mountain_pass(spec, E, cfg);
    json j = to_json(res);
    j["params"] = params_echo(c);
    write_json(c.out + ".json", j);
    write_function_csv(c.out + ".csv", res.u);
    std::printf("solve: method=%s phi=%.12g residual=%.3g converged=%s\n", res.method.c_str(),
                res.phi, res.residual, res.converged ? "true" : "false");
    return res.converged ? 0 : 2;
}

int run_multi(const KeyValues& kv) {
    reject_unknown(kv, {"s", "p", "q", "lambda", "a", "b", "n", "h", "K", "g", "count", "out",
                        "seed", "tol", "maxit"});
    const CommonParams c = common_params(kv);
    const int count = static_cast<int>(to_long(kv, "count", 2));
    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    ProblemSpec spec;
    try {
        spec = problem_from(kv, E);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    SolveConfig cfg;
    cfg.tolerance = to_double(kv, "tol", cfg.tolerance);

    const MultiResult multi = multi_solution_search(spec, E, cfg, count);
    json arr = json::array();
    for (const auto& r : multi.solutions) arr.push_back(to_json(r));
    write_json(c.out + ".json", arr);
    for (std::size_t i = 0; i < multi.solutions.size(); ++i)
        write_function_csv(c.out + "_" + std::to_string(i) + ".csv", multi.solutions[i].u);
    std::printf("multi: found=%zu shortfall=%s\n", multi.solutions.size(),
                multi.shortfall ? "true" : "false");
    return multi.shortfall ? 2 : 0;
}

int run_check_weight(const KeyValues& kv) {
    reject_unknown(kv, {"class", "beta", "h", "q", "t", "p", "s", "N", "out"});
    ClassQuery cq;
    const std::string cls = to_string(kv, "class", "Bq");
    if (cls == "Aq")
        cq.cls = WeightClass::Aq;
    else if (cls == "Bq")
        cq.cls = WeightClass::Bq;
    else if (cls == "Btildeq")
        cq.cls = WeightClass::Btilde;
    else if (cls == "Btq")
        cq.cls = WeightClass::Bt;
    else
        throw UsageError("class must be one of Aq, Bq, Btildeq, Btq");
    cq.N = static_cast<int>(to_long(kv, "N", 1));
    cq.s = to_double(kv, "s", 0.5);
    cq.p = to_double(kv, "p", 2.0);
    cq.q = to_double(kv, "q", 2.0);
    cq.t = to_double(kv, "t", 1.0);
    if (!(cq.s > 0.0 && cq.s < 1.0)) throw UsageError("s must lie in (0,1)");
    if (!(cq.p > 1.0)) throw UsageError("p must exceed 1");

    WeightSpec w = kv.count("beta") ? WeightSpec::power(to_double(kv, "beta", 0.0))
                                    : parse_weight(to_string(kv, "h", "const:1"));
    CheckOutcome out;
    try {
        out = check_class(w, cq);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    const std::string path = to_string(kv, "out", "result");
    if (out.admissible()) {
        write_json(path + ".json", to_json(*out.certificate));
        std::printf("check-weight: admissible class=%s a=%.6g r=%.6g slack=%.3g\n",
                    class_name(cq.cls).c_str(), out.certificate->a, out.certificate->r,
                    out.certificate->slack);
        return 0;
    }
    write_json(path + ".json", to_json(*out.refusal));
    if (out.refusal->beta_star)
        std::printf("check-weight: refused (%s), beta* = %.6f\n",
                    out.refusal->binding_constraint.c_str(), *out.refusal->beta_star);
    else
        std::printf("check-weight: refused (%s)\n", out.refusal->binding_constraint.c_str());
    return 2;
}

int run_hardy(const KeyValues& kv) {
    reject_unknown(kv, {"s", "p", "a", "b", "n", "count", "out", "seed"});
    const CommonParams c = common_params(kv);
    const int count = static_cast<int>(to_long(kv, "count", 50));
    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    const HardyReport rep = hardy_constant(E, bump_family(g, count));

    json j = to_json(rep);
    j["params"] = params_echo(c);
    write_json(c.out + ".json", j);
    std::FILE* f = std::fopen((c.out + ".csv").c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open csv");
    std::fputs("index,ratio\n", f);
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        std::fprintf(f, "%zu,%.17g\n", i, rep.ratios[i]);
    std::fclose(f);
    std::printf("hardy: regime=%s constant=%.6g family=%d\n", rep.regime.c_str(), rep.constant,
                rep.family_size);
    return 0;
}

int run_moser(const KeyValues& kv) {
    reject_unknown(kv,
                   {"s", "p", "a", "b", "n", "h", "r", "delta-scale", "out", "seed", "tol",
                    "maxit"});
    const CommonParams c = common_params(kv);
    const double r = to_double(kv, "r", 4.0);
    if (!(r > 1.0)) throw UsageError("r must exceed 1");
    const WeightSpec h = parse_weight(to_string(kv, "h", "const:1"));

    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    RayleighConfig rcfg;
    rcfg.tolerance = to_double(kv, "tol", rcfg.tolerance);
    rcfg.seed_value = c.seed;
    const EigenResult eig = first_eigenpair(E, h, rcfg);

    AdmissibilityCertificate cert;
    cert.cls = WeightClass::Aq;
    cert.N = 1;
    cert.s = c.s;
    cert.p = c.p;
    cert.q = c.p;
    cert.a = 0.0;
    cert.r = r;
    cert.slack = 1.0;
    cert.integrability_slack = 1.0;
    cert.b_or_tau = 0.0;

    MoserConfig mcfg;
    mcfg.delta_scale = to_double(kv, "delta-scale", 1.0);
    const MoserCertificate mc = moser_certify(eig.u, eig.lambda, h, cert, mcfg);
    json j = to_json(mc);
    j["lambda"] = eig.lambda;
    j["params"] = params_echo(c);
    write_json(c.out + ".json", j);
    std::printf("moser: certified=%s bound=%.6g direct_max=%.6g levels=%zu\n",
                mc.certified ? "true" : "false", mc.certified_bound, mc.direct_max,
                mc.levels.size());
    return mc.certified ? 0 : 2;
}

int run_scaling(const KeyValues& kv) {
    reject_unknown(kv, {"s", "p", "a", "b", "n", "t", "out", "seed"});
    const CommonParams c = common_params(kv);
    std::vector<double> ts;
    std::stringstream ss(to_string(kv, "t", "8"));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            ts.push_back(std::stod(item));
        } catch (...) {
            throw UsageError("t expects a comma-separated list of numbers");
        }
    }
    const Grid g = build_grid(c.a, c.b, c.n);
    const auto E = EnergyAssembly::assemble(g, c.s, c.p);
    const ScalingReport rep = scaling_check(E, bump(g), ts);
    json j = to_json(rep);
    j["params"] = params_echo(c);
    // the exponent map r(q) with its two branches, at a few sample points
    json rq = json::array();
    for (double q : {1.1, 1.5, 2.0, 3.0, 6.0}) {
        const auto rr = summability_exponent(1, c.s, c.p, q);
        rq.push_back(
            {{"q", q}, {"r", rr ? (std::isinf(*rr) ? json("inf") : json(*rr)) : json(nullptr)}});
    }
    j["r_of_q"] = rq;
    write_json(c.out + ".json", j);
    std::printf("scaling: max_deviation=%.3g\n", rep.max_deviation);
    return rep.max_deviation <= 1e-6 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr,
                     "usage: fracp <eig|solve|multi|check-weight|hardy|moser|scaling> "
                     "[--config FILE] [--key value ...]\n");
        return 1;
    }
    const std::string command = argv[1];
    try {
        const KeyValues kv = parse_args(argc, argv, 2);
        if (command == "eig") return run_eig(kv);
        if (command == "solve") return run_solve(kv);
        if (command == "multi") return run_multi(kv);
        if (command == "check-weight") return run_check_weight(kv);
        if (command == "hardy") return run_hardy(kv);
        if (command == "moser") return run_moser(kv);
        if (command == "scaling") return run_scaling(kv);
        std::fprintf(stderr, "unknown command: %s\n", command.c_str());
        return 1;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 2;
    }
}
