// metakit command line: evaluation and verification with JSON/CSV reports.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "metakit/char_sums.hpp"
#include "metakit/coefficients.hpp"
#include "metakit/eisenstein.hpp"
#include "metakit/mpl_group.hpp"
#include "metakit/special_funcs.hpp"

using namespace metakit;

namespace {

std::string num(double x) {
    if (!std::isfinite(x)) return "null";
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

struct Value {
    std::string label;
    cplx v;
    std::string prov;
    double err = 0;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // already JSON literals
    std::vector<Value> values;
    std::string status = "pass";
    std::string message;

    void in(const std::string& k, double x) { inputs.emplace_back(k, num(x)); }
    void in(const std::string& k, long x) { inputs.emplace_back(k, std::to_string(x)); }
    void in(const std::string& k, int x) { inputs.emplace_back(k, std::to_string(x)); }
    void in(const std::string& k, const std::string& x) { inputs.emplace_back(k, quote(x)); }
    void add(const std::string& label, cplx v, Provenance p, double err = 0) {
        values.push_back({label, v, provenance_name(p), err});
    }
    // residual-style entry; marks the report failed when over budget
    void check(const std::string& label, double residual, double budget, Provenance p = Provenance::BruteForce) {
        values.push_back({label, residual, provenance_name(p), budget});
        if (!(residual <= budget) && status == "pass") status = "fail";
    }
};

struct Settings {
    PrecisionConfig prec;
    EvalConfig eval;
};

// key=value lines, '#' comments
void load_config(const std::string& path, Settings& s) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open config file " + path);
    std::string line;
    while (std::getline(f, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) throw DomainError("bad config line: " + line);
            continue;
        }
        auto trim = [](std::string x) {
            auto a = x.find_first_not_of(" \t\r\""), b = x.find_last_not_of(" \t\r\"");
            return a == std::string::npos ? std::string() : x.substr(a, b - a + 1);
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        try {
            if (k == "em_terms") s.prec.em_terms = std::stoi(v);
            else if (k == "em_order") s.prec.em_order = std::stoi(v);
            else if (k == "quad_tol") s.prec.quad_tol = std::stod(v);
            else if (k == "pole_guard") s.prec.pole_guard = std::stod(v);
            else if (k == "det_tol") s.prec.det_tol = std::stod(v);
            else if (k == "coeff_C") s.prec.coeff_C = std::stol(v);
            else if (k == "coeff_A") s.prec.coeff_A = std::stol(v);
            else if (k == "fourier_n_max") s.eval.fourier_n_max = std::stoi(v);
            else if (k == "cusp_sum_radius") s.eval.cusp_sum_radius = std::stoi(v);
            else if (k == "eval_quad_tol") s.eval.quad_tol = std::stod(v);
            else if (k == "ibp_depth") s.eval.ibp_depth = std::stoi(v);
            else throw DomainError("unknown config key " + k);
        } catch (const std::invalid_argument&) {
            throw DomainError("bad value for " + k);
        }
    }
}

std::string config_json(const Settings& s) {
    const auto& p = s.prec;
    const auto& e = s.eval;
    std::ostringstream o;
    o << "{\"em_terms\":" << p.em_terms << ",\"em_order\":" << p.em_order << ",\"quad_tol\":" << num(p.quad_tol)
      << ",\"pole_guard\":" << num(p.pole_guard) << ",\"det_tol\":" << num(p.det_tol) << ",\"coeff_C\":" << p.coeff_C
      << ",\"coeff_A\":" << p.coeff_A << ",\"fourier_n_max\":" << e.fourier_n_max
      << ",\"cusp_sum_radius\":" << e.cusp_sum_radius << ",\"eval_quad_tol\":" << num(e.quad_tol)
      << ",\"ibp_depth\":" << e.ibp_depth << "}";
    return o.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

void emit(const Report& r, const Settings& s, long ms, const std::string& format) {
    if (format == "csv") {
        std::printf("label,re,im,provenance,error_bound\n");
        for (const auto& v : r.values)
            std::printf("%s,%s,%s,%s,%s\n", csv_field(v.label).c_str(), num(v.v.real()).c_str(), num(v.v.imag()).c_str(),
                        v.prov.c_str(), num(v.err).c_str());
        return;
    }
    std::ostringstream o;
    o << "{\n  \"command\": " << quote(r.command) << ",\n  \"inputs\": {";
    for (std::size_t i = 0; i < r.inputs.size(); ++i)
        o << (i ? ", " : "") << quote(r.inputs[i].first) << ": " << r.inputs[i].second;
    o << "},\n  \"config\": " << config_json(s) << ",\n  \"values\": [";
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const auto& v = r.values[i];
        o << (i ? "," : "") << "\n    {\"label\": " << quote(v.label) << ", \"value\": {\"re\": " << num(v.v.real())
          << ", \"im\": " << num(v.v.imag()) << "}, \"provenance\": " << quote(v.prov)
          << ", \"error_bound\": " << num(v.err) << "}";
    }
    o << (r.values.empty() ? "" : "\n  ") << "],\n  \"status\": " << quote(r.status);
    if (!r.message.empty()) o << ",\n  \"message\": " << quote(r.message);
    o << ",\n  \"wall_time_ms\": " << ms << "\n}\n";
    std::fputs(o.str().c_str(), stdout);
}

std::string nlabel(long n) { return n == kInfSlot ? std::string("inf") : std::to_string(n); }

// ---- commands ----

void cmd_kronecker(Report& r, long a, long n) {
    r.in("a", a);
    r.in("n", n);
    r.add("kronecker", double(kronecker(a, n)), Provenance::ClosedForm);
}

void cmd_gauss(Report& r, long n, long c, const std::string& mode) {
    r.in("n", n);
    r.in("c", c);
    r.in("mode", mode);
    if (mode != "brute") r.add("closed", gauss_sum_closed(n, c), Provenance::ClosedForm);
    if (mode != "closed") r.add("brute", gauss_sum_bruteforce(n, c), Provenance::BruteForce);
    if (mode == "both") r.check("discrepancy", std::abs(r.values[0].v - r.values[1].v), 1e-8 * std::max(1.0, std::sqrt(double(c))));
}

void cmd_kloosterman(Report& r, long kappa, long n, long fourc, const std::string& mode) {
    r.in("kappa", kappa);
    r.in("n", n);
    r.in("fourc", fourc);
    r.in("mode", mode);
    cplx brute = kloosterman_bruteforce(kappa, n, fourc);
    if (mode != "brute" && kappa == -1 && fourc % 4 == 0) {
        r.add("factored", kloosterman_factored(n, fourc / 4), Provenance::ClosedForm);
    } else if (mode != "brute") {
        throw DomainError("closed form needs kappa = -1 and 4 | fourc");
    }
    if (mode != "closed") r.add("brute", brute, Provenance::BruteForce);
    if (mode == "both") r.check("discrepancy", std::abs(r.values[0].v - brute), 1e-8 * double(fourc));
}

void cmd_coeff(Report& r, const Settings& st, const std::string& family, int eps, cplx nu, long n_min, long n_max,
               bool with_inf, const std::string& source) {
    r.in("family", family);
    r.in("eps", eps);
    r.in("nu_re", nu.real());
    r.in("nu_im", nu.imag());
    r.in("n_min", n_min);
    r.in("n_max", n_max);
    r.in("inf", std::string(with_inf ? "yes" : "no"));
    r.in("source", source);
    if (eps != 1 && eps != -1) throw DomainError("eps must be +-1");
    if (n_min > n_max) throw DomainError("n_min > n_max");
    const auto& cfg = st.prec;
    if (family == "a") {
        bool closed = source == "closed" || source == "both", brute = source == "brute" || source == "both";
        if (!closed && !brute) throw DomainError("family a sources: closed, brute, both");
        std::unique_ptr<KloostermanOracle> o;
        if (brute) o = std::make_unique<KloostermanOracle>(cfg.coeff_C);
        for (long n = n_min; n <= n_max; ++n) {
            cplx c = closed ? coeff_a(eps, n, nu, cfg) : 0.0;
            if (closed) r.add("a(" + nlabel(n) + ")", c, Provenance::ClosedForm);
            if (brute) {
                auto b = coeff_a_bruteforce(eps, n, nu, *o, cfg);
                r.add("a(" + nlabel(n) + ") brute", b.value, Provenance::BruteForce, b.error_bound);
                if (closed) r.check("a(" + nlabel(n) + ") discrepancy", std::abs(c - b.value), std::max(b.error_bound, 1e-9));
            }
        }
        if (with_inf) r.add("a(inf)", coeff_a(eps, kInfSlot, nu, cfg), Provenance::ClosedForm);
    } else if (family == "b") {
        bool derived = source == "derived" || source == "both" || source == "closed";
        bool brute = source == "brute" || source == "both";
        if (!derived && !brute) throw DomainError("family b sources: closed, derived, brute, both");
        std::vector<CoeffValue> bv;
        if (brute) bv = coeff_b_bruteforce_range(eps, n_min, n_max, nu, cfg.coeff_A, cfg);
        for (long n = n_min; n <= n_max; ++n) {
            cplx d = 0;
            if (derived) {
                if (n == 0) {
                    d = coeff_b_zero(eps, nu, cfg);
                    r.add("b(0)", d, Provenance::ClosedForm);
                } else {
                    d = coeff_b_derived_FE(eps, n, nu, cfg);
                    r.add("b(" + nlabel(n) + ")", d, Provenance::DerivedFE);
                }
            }
            if (brute) {
                const auto& b = bv[n - n_min];
                r.add("b(" + nlabel(n) + ") brute", b.value, Provenance::BruteForce, b.error_bound);
                if (derived)
                    r.check("b(" + nlabel(n) + ") discrepancy", std::abs(d - b.value), std::max(b.error_bound, 1e-3));
            }
        }
        if (with_inf) r.add("b(inf)", coeff_b_inf(), Provenance::ClosedForm);
    } else if (family == "c") {
        for (long n = n_min; n <= n_max; ++n) r.add("c(" + nlabel(n) + ")", coeff_c(eps, n, nu, cfg), Provenance::ClosedForm);
        if (with_inf) r.add("c(inf)", coeff_c(eps, kInfSlot, nu, cfg), Provenance::ClosedForm);
    } else if (family == "d") {
        for (long n = n_min; n <= n_max; ++n) {
            auto d = coeff_d(eps, n, nu, cfg);
            r.add("d(" + nlabel(n) + ")", d.value, d.prov, d.error_bound);
        }
        if (with_inf) {
            auto d = coeff_d(eps, kInfSlot, nu, cfg);
            r.add("d(inf)", d.value, d.prov, d.error_bound);
        }
    } else {
        throw DomainError("family must be one of a, b, c, d");
    }
}

void cmd_eisenstein(Report& r, const Settings& st, const std::string& cusp, double x, double y, cplx s, int ell,
                    const std::string& route, const std::string& bsrc) {
    r.in("cusp", cusp);
    r.in("z_re", x);
    r.in("z_im", y);
    r.in("s_re", s.real());
    r.in("s_im", s.imag());
    r.in("ell", ell);
    r.in("route", route);
    r.in("b_source", bsrc);
    if (cusp != "inf" && cusp != "zero") throw DomainError("cusp must be inf or zero");
    if (route != "direct" && route != "fourier" && route != "both") throw DomainError("route must be direct, fourier or both");
    if (bsrc != "brute" && bsrc != "derived") throw DomainError("b-source must be brute or derived");
    UpperHalfPoint z(x, y);
    EvalConfig cfg = st.eval;
    cfg.prec = st.prec;
    bool zero = cusp == "zero";
    Estimate d, f;
    if (route != "fourier") {
        d = zero ? eisenstein_zero_direct(z, s, ell, cfg) : eisenstein_inf_direct(z, s, ell, cfg);
        r.add("E_" + cusp + " direct", d.value, Provenance::BruteForce, d.error);
    }
    if (route != "direct") {
        BSource b = bsrc == "brute" ? BSource::BruteForce : BSource::Derived;
        f = zero ? eisenstein_zero_fourier(z, s, ell, b, cfg) : eisenstein_inf_fourier(z, s, ell, cfg);
        r.add("E_" + cusp + " fourier", f.value, Provenance::Quadrature, f.error);
    }
    if (route == "both")
        r.check("discrepancy", std::abs(d.value - f.value), d.error + f.error + 10 * cfg.quad_tol);
}

// ---- verification suites ----

void suite_group(Report& r) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3, 3), Th(-1.5, 1.5);
    std::uniform_int_distribution<int> coin(0, 1);
    auto rnd = [&] {
        double a;
        do a = U(rng);
        while (std::abs(a) < 0.2);
        double b = U(rng), c = coin(rng) ? U(rng) : 0.0;
        MetaElement g;
        g.g = {a, b, c, (1 + b * c) / a};
        g.sign = coin(rng) ? 1 : -1;
        return g;
    };
    int bad_c = 0, bad_a = 0, bad_k = 0;
    for (int i = 0; i < 300; ++i) {
        auto g1 = rnd(), g2 = rnd(), g3 = rnd();
        bad_c += cocycle_alpha(g1.g, g2.g) * cocycle_alpha(g1.g * g2.g, g3.g) !=
                 cocycle_alpha(g1.g, g2.g * g3.g) * cocycle_alpha(g2.g, g3.g);
        bad_a += !same_element(multiply(multiply(g1, g2), g3), multiply(g1, multiply(g2, g3)), 1e-10);
        double t = Th(rng);
        bad_k += !same_element(reconstruct(iwasawa_kan(multiply(g1, gen_k(t)))), multiply(g1, gen_k(t)), 1e-9);
    }
    r.check("cocycle identity failures", bad_c, 0);
    r.check("associativity failures", bad_a, 0);
    r.check("iwasawa reconstruction failures", bad_k, 0);
}

void suite_sums(Report& r) {
    double g = 0, k = 0, f = 0;
    for (i64 c = 1; c <= 199; c += 2)
        for (i64 n = -20; n <= 20; ++n) g = std::max(g, std::abs(gauss_sum_closed(n, c) - gauss_sum_bruteforce(n, c)));
    for (int kk = 0; kk <= 6; ++kk) {
        i64 M = i64(1) << (kk + 2);
        for (i64 c = 1; c < M; c += 2)
            for (i64 n = -40; n <= 40; ++n)
                k = std::max(k, std::abs(kloosterman_2power_closed(c, n, kk) -
                                         kloosterman_bruteforce(-c, mod_floor(n * bar_odd_mod_2power(c, kk), M), M)));
    }
    for (i64 c = 1; c <= 120; ++c)
        for (i64 n = -12; n <= 12; ++n)
            f = std::max(f, std::abs(kloosterman_factored(n, c) - kloosterman_bruteforce(-1, n, 4 * c)));
    r.check("gauss closed vs brute", g, 1e-8);
    r.check("2-power kloosterman closed vs brute", k, 1e-6);
    r.check("kloosterman factorization", f, 1e-6);
}

void suite_gamma(Report& r, const PrecisionConfig& cfg) {
    double w = 0;
    for (int i = 0; i < 20; ++i) {
        cplx nu(-2.35 + 0.29 * i, 0.6 * std::sin(1.7 * i) + 0.15);
        cplx a = riemann_zeta(1.0 - nu, cfg), b = gamma_G0(nu, cfg) * riemann_zeta(nu, cfg);
        cplx c = kPi / std::tan(kPi * nu) / nu * gamma_G0(2.0 * nu + 1.0, cfg), d = -gamma_G0(2.0 * nu, cfg);
        w = std::max({w, std::abs(a - b) / std::abs(b), std::abs(c - d) / std::abs(d)});
    }
    r.check("gamma-zeta identities (relative)", w, 1e-9, Provenance::ClosedForm);
    double q = 0;
    for (int e1 : {1, -1})
        for (int e2 : {1, -1})
            q = std::max(q, std::abs(conditional_fourier_power_integral(e1, e2, 0.5, cfg).value - gamma_Gpair(e1, e2, 0.5, cfg)));
    r.check("conditional integral vs G pair", q, 1e-5, Provenance::Quadrature);
}

void suite_coeffs(Report& r, const PrecisionConfig& cfg) {
    KloostermanOracle o(6000);
    double worst = 0;
    for (int eps : {1, -1})
        for (long n = -6; n <= 6; ++n) {
            auto b = coeff_a_bruteforce(eps, n, 2.0, o, cfg);
            worst = std::max(worst, std::abs(b.value - coeff_a(eps, n, 2.0, cfg)) / std::max(b.error_bound, 1e-9));
        }
    r.check("a closed vs brute at nu = 2: worst discrepancy / tail bound", worst, 1.0);
    auto b0 = coeff_b_bruteforce(1, 0, 2.0, cfg.coeff_A, cfg);
    r.check("b(0) closed vs brute at nu = 2", std::abs(b0.value - coeff_b_zero(1, 2.0, cfg)), std::max(b0.error_bound, 1e-9));
}

void suite_fe_dist(Report& r, const PrecisionConfig& cfg) {
    for (int eps : {1, -1})
        for (cplx nu : {cplx(0.3), cplx(1.2, 0.4), cplx(-0.7, 1.1), cplx(2.2, -0.3)}) {
            auto c = cuspidality_residuals(eps, nu, cfg);
            char lab[96];
            for (int i = 0; i < 4; ++i) {
                std::snprintf(lab, sizeof lab, "eps=%d nu=%g%+gi residual %d", eps, nu.real(), nu.imag(), i + 1);
                r.check(lab, std::abs(c.r[i]), 1e-9 * std::max(1.0, c.scale[i]), Provenance::ClosedForm);
            }
        }
}

void suite_fe_classical(Report& r, const Settings& st) {
    EvalConfig cfg = st.eval;
    cfg.prec = st.prec;
    struct P {
        double x, y;
        cplx s;
        int ell;
    };
    for (P p : {P{0, 1, 1.3, 0}, P{0, 1, 1.5, 2}}) {
        auto f = classical_fe_residual(UpperHalfPoint(p.x, p.y), p.s, p.ell, cfg);
        char lab[96];
        std::snprintf(lab, sizeof lab, "z=%g+%gi s=%g%+gi ell=%d", p.x, p.y, p.s.real(), p.s.imag(), p.ell);
        r.check(lab, std::abs(f.residual), std::min(f.budget + 1e-9 * std::abs(f.rhs), 5e-3 * std::abs(f.rhs)));
    }
}

void cmd_verify(Report& r, const Settings& st, const std::string& suite) {
    r.in("suite", suite);
    static const std::vector<std::string> all{"group", "sums", "gamma", "coeffs", "fe-dist", "fe-classical"};
    bool any = false;
    for (const auto& s : all) {
        if (suite != "all" && suite != s) continue;
        any = true;
        if (s == "group") suite_group(r);
        if (s == "sums") suite_sums(r);
        if (s == "gamma") suite_gamma(r, st.prec);
        if (s == "coeffs") suite_coeffs(r, st.prec);
        if (s == "fe-dist") suite_fe_dist(r, st.prec);
        if (s == "fe-classical") suite_fe_classical(r, st);
    }
    if (!any) throw DomainError("unknown suite " + suite);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metakit: metaplectic Eisenstein arithmetic and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json", config_path;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config_path, "key=value config file (default: $METAKIT_CONFIG)");

    Settings st;
    std::map<std::string, double> overrides;
    auto ov = [&](const char* flag, const char* key) {
        app.add_option_function<double>(flag, [&overrides, key](double v) { overrides[key] = v; });
    };
    ov("--em-terms", "em_terms");
    ov("--em-order", "em_order");
    ov("--quad-tol", "quad_tol");
    ov("--coeff-C", "coeff_C");
    ov("--coeff-A", "coeff_A");
    ov("--fourier-n-max", "fourier_n_max");
    ov("--cusp-sum-radius", "cusp_sum_radius");
    ov("--eval-quad-tol", "eval_quad_tol");
    ov("--ibp-depth", "ibp_depth");

    std::function<void(Report&)> run;

    auto* kr = app.add_subcommand("kronecker", "Kronecker symbol (a/n)");
    long ka = 0, kn = 1;
    kr->add_option("--a", ka)->required();
    kr->add_option("--n", kn)->required();
    kr->callback([&] { run = [&](Report& r) { cmd_kronecker(r, ka, kn); }; });

    auto* ga = app.add_subcommand("gauss", "Gauss sum G(n; c)");
    long gn = 0, gc = 1;
    std::string gmode = "closed";
    ga->add_option("--n", gn)->required();
    ga->add_option("--c", gc)->required();
    ga->add_option("--mode", gmode)->check(CLI::IsMember({"brute", "closed", "both"}));
    ga->callback([&] { run = [&](Report& r) { cmd_gauss(r, gn, gc, gmode); }; });

    auto* kl = app.add_subcommand("kloosterman", "Kloosterman sum K_kappa(n; 4c)");
    long kk = -1, kln = 0, kf = 4;
    std::string kmode = "brute";
    kl->add_option("--kappa", kk)->required();
    kl->add_option("--n", kln)->required();
    kl->add_option("--fourc", kf)->required();
    kl->add_option("--mode", kmode)->check(CLI::IsMember({"brute", "closed", "both"}));
    kl->callback([&] { run = [&](Report& r) { cmd_kloosterman(r, kk, kln, kf, kmode); }; });

    auto* co = app.add_subcommand("coeff", "Fourier coefficient tables a, b, c, d");
    std::string fam = "a", csrc = "closed";
    int ceps = 1;
    double cnr = 2, cni = 0;
    long nmin = 0, nmax = 0;
    bool cinf = false;
    co->add_option("--family", fam)->required();
    co->add_option("--eps", ceps);
    co->add_option("--nu-re", cnr);
    co->add_option("--nu-im", cni);
    co->add_option("--n-min", nmin);
    co->add_option("--n-max", nmax);
    co->add_flag("--inf", cinf, "include the slot at infinity");
    co->add_option("--source", csrc)->check(CLI::IsMember({"closed", "brute", "derived", "both"}));
    co->callback([&] { run = [&](Report& r) { cmd_coeff(r, st, fam, ceps, cplx(cnr, cni), nmin, nmax, cinf, csrc); }; });

    auto* ve = app.add_subcommand("verify", "Run an invariant suite");
    std::string suite = "all";
    ve->add_option("--suite", suite);
    ve->callback([&] { run = [&](Report& r) { cmd_verify(r, st, suite); }; });

    auto* ei = app.add_subcommand("eisenstein", "Eisenstein series at a cusp");
    std::string cusp = "inf", route = "fourier", bsrc = "brute";
    double zr = 0, zi = 1, sr = 1.5, si = 0;
    int ell = 0;
    ei->add_option("--cusp", cusp);
    ei->add_option("--z-re", zr);
    ei->add_option("--z-im", zi);
    ei->add_option("--s-re", sr);
    ei->add_option("--s-im", si);
    ei->add_option("--ell", ell);
    ei->add_option("--route", route);
    ei->add_option("--b-source", bsrc);
    ei->callback([&] { run = [&](Report& r) { cmd_eisenstein(r, st, cusp, zr, zi, cplx(sr, si), ell, route, bsrc); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report rep;
    rep.command = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (config_path.empty())
            if (const char* env = std::getenv("METAKIT_CONFIG")) config_path = env;
        if (!config_path.empty()) load_config(config_path, st);
        for (auto& [k, v] : overrides) {
            if (k == "em_terms") st.prec.em_terms = int(v);
            if (k == "em_order") st.prec.em_order = int(v);
            if (k == "quad_tol") st.prec.quad_tol = v;
            if (k == "coeff_C") st.prec.coeff_C = long(v);
            if (k == "coeff_A") st.prec.coeff_A = long(v);
            if (k == "fourier_n_max") st.eval.fourier_n_max = int(v);
            if (k == "cusp_sum_radius") st.eval.cusp_sum_radius = int(v);
            if (k == "eval_quad_tol") st.eval.quad_tol = v;
            if (k == "ibp_depth") st.eval.ibp_depth = int(v);
        }
        st.prec.validate();
        st.eval.prec = st.prec;
        st.eval.validate();
        run(rep);
        rc = rep.status == "pass" ? 0 : 1;
    } catch (const AccuracyError& e) {
        rep.status = "fail";
        rep.message = e.what();
        rc = 1;
    } catch (const std::exception& e) {
        // DomainError, PoleError and bad input all land here
        rep.status = "error";
        rep.message = e.what();
        rc = 2;
    }
    long ms = long(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    emit(rep, st, ms, format);
    return rc;
}
