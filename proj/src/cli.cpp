#include "orbifold/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "orbifold/errors.hpp"
#include "orbifold/matrix_oracle.hpp"
#include "orbifold/number_theory.hpp"
#include "orbifold/projection_certificate.hpp"
#include "orbifold/theta.hpp"

namespace orbifold::cli {

using nlohmann::json;

namespace {

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::string str(const Int& v) { return v.str(); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Int parse_int(const std::string& t) {
    std::string s = trim(t);
    bool neg = !s.empty() && s[0] == '-';
    std::string digits = neg ? s.substr(1) : s;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("not an integer: '" + t + "'");
    auto nz = digits.find_first_not_of('0');
    Int v = nz == std::string::npos ? Int(0) : Int(digits.substr(nz));
    return neg ? Int(-v) : v;
}

std::int64_t parse_i64(const std::string& t) { return narrow(parse_int(t), "integer argument"); }

// theta options shared by several subcommands
struct ThetaOptions {
    std::string cf, decimal;
    int digits = 0;
    CLI::Option* cf_opt = nullptr;
    CLI::Option* dec_opt = nullptr;

    void attach(CLI::App* app) {
        cf_opt = app->add_option("--cf", cf, "continued fraction, e.g. 0,2,2 or 0,(2)");
        dec_opt = app->add_option("--decimal", decimal, "decimal expansion of theta");
        app->add_option("--digits", digits, "number of correct decimal digits");
        cf_opt->excludes(dec_opt);
    }
    ThetaSource source() const {
        if (!cf.empty()) return parse_cf(cf);
        if (!decimal.empty()) {
            if (digits < 1) throw CLI::ValidationError("--decimal needs --digits >= 1");
            return ThetaSource::decimal(decimal, digits);
        }
        throw CLI::RequiredError("one of --cf or --decimal");
    }
};

json theta_json(const ThetaSource& t) { return {{"spec", t.spec()}, {"digest", hex(t.digest())}}; }

void write_atomic(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << text;
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int emit(const json& doc, const std::string& out_dir, const std::string& name, std::ostream& out) {
    std::string text = dump(doc);
    if (!out_dir.empty()) write_atomic(std::filesystem::path(out_dir) / (name + ".json"), text);
    out << text;
    return doc.value("pass", true) ? kPass : kClaimFailure;
}

void write_csv(const std::filesystem::path& path, const NCSeries& s) {
    std::ostringstream os;
    os << "m,n,re,im,modulus\n";
    os << std::setprecision(17);
    for (const auto& [mn, t] : s.terms) {
        cplx c = s.coeff(mn.first, mn.second);
        os << mn.first << ',' << mn.second << ',' << c.real() << ',' << c.imag() << ',' << std::abs(c) << '\n';
    }
    write_atomic(path, os.str());
}

Convergent pick_convergent(const ThetaSource& theta, const std::string& pq, int index) {
    if (!pq.empty()) {
        auto [p, q] = parse_fraction(pq);
        return make_convergent(theta, p, q);
    }
    if (index < 0) throw CLI::RequiredError("one of --pq or --index");
    auto cs = convergents(theta, static_cast<std::size_t>(index) + 1);
    return cs.back();
}

Certificate failed(const std::string& claim, const std::string& why) {
    Certificate c;
    c.claim = claim;
    c.require("evaluated", false);
    c.notes = why;
    c.finish();
    return c;
}

template <class F>
Certificate guarded(const std::string& claim, F&& f) {
    try {
        return f();
    } catch (const ScopeError&) {
        throw;
    } catch (const std::exception& ex) {
        return failed(claim, ex.what());
    }
}

void check_tol(double tol) {
    if (!(tol > 0) || !std::isfinite(tol)) throw CLI::ValidationError("--tol must be positive");
}

}  // namespace

json to_json(const CertificateInputs& in) {
    return {{"theta", in.theta}, {"theta_digest", in.theta_digest.empty() ? "" : in.theta_digest},
            {"p", in.p},         {"q", in.q},
            {"pj", in.pj},       {"a", in.a},
            {"b", in.b},         {"gamma", in.gamma},
            {"c", in.c},         {"d", in.d}};
}

json to_json(const Certificate& c) {
    json checks = json::array();
    for (const auto& k : c.checks)
        checks.push_back({{"name", k.name}, {"value", k.value}, {"threshold", k.threshold}, {"strict", k.strict},
                          {"pass", k.pass}});
    json j = {{"claim", c.claim},         {"values", c.values},   {"threshold", c.threshold},
              {"pass", c.pass},           {"tolerance", c.tolerance}, {"tail_budget", c.tail_budget},
              {"checks", checks},         {"notes", c.notes},     {"skipped", c.skipped}};
    j["inputs"] = c.inputs ? to_json(*c.inputs) : json(nullptr);
    return j;
}

ThetaSource parse_cf(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw CLI::ValidationError("--cf: empty continued fraction");
    std::vector<Int> pre, period;
    auto open = s.find('(');
    std::string head = open == std::string::npos ? s : s.substr(0, open);
    for (auto& tok : split(head, ',')) {
        if (trim(tok).empty()) continue;
        pre.push_back(parse_int(tok));
    }
    if (open == std::string::npos) {
        if (pre.empty()) throw CLI::ValidationError("--cf: empty continued fraction");
        return ThetaSource::cf(pre);
    }
    auto close = s.find(')', open);
    if (close == std::string::npos || trim(s.substr(close + 1)) != "")
        throw CLI::ValidationError("--cf: period must be a final parenthesized group");
    for (auto& tok : split(s.substr(open + 1, close - open - 1), ',')) period.push_back(parse_int(tok));
    return ThetaSource::periodic(pre, period);
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& text) {
    auto parts = split(text, '/');
    if (parts.size() == 1) return {parse_i64(parts[0]), 1};
    if (parts.size() != 2) throw DomainError("expected r/s: '" + text + "'");
    std::int64_t r = parse_i64(parts[0]), s = parse_i64(parts[1]);
    if (s <= 0) throw DomainError("denominator must be positive");
    return {r, s};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rieffel-projection certificates for irrational rotation algebras"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    ThetaOptions th_conv, th_cert, th_scan;
    std::string out_dir;
    double tol = 1e-15;
    int cutoff = kDefaultCutoff, count = 8, grid_points = 10000, index = -1;
    std::string pq, override_abc, rho = "3/2";
    bool emit_csv = false, probe = false;
    std::int64_t p_arg = 0, N = 2, M = 3;

    auto* c_conv = app.add_subcommand("convergents", "list convergents with q|q theta - p|");
    th_conv.attach(c_conv);
    c_conv->add_option("--count", count, "number of convergents")->check(CLI::PositiveNumber);
    c_conv->add_option("--out", out_dir, "output directory");

    auto* c_fs = app.add_subcommand("foursquare", "four-square decomposition of p and the ABC triple");
    c_fs->add_option("--p", p_arg, "p")->required()->check(CLI::NonNegativeNumber);
    c_fs->add_option("--out", out_dir, "output directory");

    auto* c_abc = app.add_subcommand("select-abc", "choose (a, b, gamma) with gcd(Delta, q) = 1");
    c_abc->add_option("--pq", pq, "p/q")->required();
    c_abc->add_option("--out", out_dir, "output directory");

    auto* c_cert = app.add_subcommand("certify", "certificate bundle for one convergent");
    th_cert.attach(c_cert);
    c_cert->add_option("--pq", pq, "p/q");
    c_cert->add_option("--index", index, "convergent index")->check(CLI::NonNegativeNumber);
    c_cert->add_option("--tol", tol, "numerical tolerance");
    c_cert->add_option("--cutoff", cutoff, "series cutoff")->check(CLI::Range(1, 200));
    c_cert->add_option("--out", out_dir, "output directory");
    c_cert->add_flag("--emit-csv", emit_csv, "write coefficient tables (needs --out)");
    c_cert->add_option("--override-abc", override_abc, "a,b,gamma used instead of the selected triple");

    auto* c_vt = app.add_subcommand("verify-theta", "theta identities and invertibility constants");
    c_vt->add_option("--tol", tol, "tolerance")->default_val(1e-10);
    c_vt->add_option("--grid-points", grid_points, "grid size on (1,10]")->check(CLI::Range(10, 10000000));
    c_vt->add_option("--out", out_dir, "output directory");

    auto* c_sp = app.add_subcommand("spectral", "finite-dimensional spectral check at rational rho");
    c_sp->add_option("--rho", rho, "rho = r/s");
    c_sp->add_option("--cutoff", cutoff, "series cutoff")->check(CLI::Range(1, 200));
    c_sp->add_flag("--probe-scalar", probe, "rho = 1 at U = V = -1");
    c_sp->add_option("--out", out_dir, "output directory");

    auto* c_gd = app.add_subcommand("gdelta-scan", "scan for the (N,1,M) window");
    th_scan.attach(c_gd);
    c_gd->add_option("--N", N, "N")->check(CLI::PositiveNumber);
    c_gd->add_option("--M", M, "M")->check(CLI::PositiveNumber);
    c_gd->add_option("--count", count, "number of CF coefficients scanned")->check(CLI::PositiveNumber);
    c_gd->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (c_conv->parsed()) {
            auto theta = th_conv.source();
            json rows = json::array();
            for (const auto& c : convergents(theta, static_cast<std::size_t>(count))) {
                auto [approx, scope] = check_approximation(theta, c.p, c.q);
                rows.push_back({{"p", c.p},
                                {"q", c.q},
                                {"q_gap", c.qgap()},
                                {"above", c.above},
                                {"approximation", approx},
                                {"in_scope", scope}});
            }
            json doc = {{"command", "convergents"}, {"theta", theta_json(theta)}, {"rows", rows}};
            return emit(doc, out_dir, "convergents", out);
        }
        if (c_fs->parsed()) {
            auto fs = four_square(p_arg);
            auto t = abc(fs);
            bool ok = t.A * t.A + 4 * t.B * t.B + 4 * t.C * t.C == Int(p_arg) * p_arg;
            json doc = {{"command", "foursquare"}, {"p", p_arg},         {"pj", fs.pj},
                        {"A", str(t.A)},           {"B", str(t.B)},      {"C", str(t.C)},
                        {"pass", ok}};
            return emit(doc, out_dir, "foursquare", out);
        }
        if (c_abc->parsed()) {
            auto [p, q] = parse_fraction(pq);
            auto fs = four_square(p);
            auto ps = select_phase(fs, q);
            json doc = {{"command", "select-abc"}, {"p", p},           {"q", q},         {"pj", fs.pj},
                        {"a", ps.a},               {"b", ps.b},        {"gamma", ps.gamma},
                        {"Delta", str(ps.Delta)},  {"c", ps.c},        {"d", ps.d},      {"k", ps.k},
                        {"pass", ps.coprime(q)}};
            return emit(doc, out_dir, "select-abc", out);
        }
        if (c_cert->parsed()) {
            check_tol(tol);
            if (emit_csv && out_dir.empty()) throw CLI::ValidationError("--emit-csv needs --out");
            auto theta = th_cert.source();
            auto conv = pick_convergent(theta, pq, index).normalize();
            auto fs = four_square(conv.p);
            PhaseSelection ps;
            if (!override_abc.empty()) {
                auto v = split(override_abc, ',');
                if (v.size() != 3) throw CLI::ValidationError("--override-abc needs a,b,gamma");
                ps = phase_from_abc(fs, conv.q, parse_i64(v[0]), parse_i64(v[1]), parse_i64(v[2]));
            } else {
                ps = select_phase(fs, conv.q);
            }
            auto ld = build_lattices(conv, fs, ps);  // ScopeError when q|q theta - p| >= 1

            std::optional<std::pair<DiophantineSolution, PhasePolynomial>> eps1;
            try {
                auto [u3, u4] = u_values(ld, TChoice::Eps1);
                auto ds = solve_diophantine(ld, u3, u4);
                eps1.emplace(ds, phase_polynomial(ld, ds, TChoice::Eps1));
            } catch (const DomainError&) {
            }
            std::vector<Certificate> certs;
            certs.push_back(guarded("invertibility", [&] { return invertibility_certificate(ld, tol); }));
            certs.push_back(guarded("approximate_centrality", [&] { return centrality_certificate(ld, tol); }));
            certs.push_back(guarded("cutdown_approximation", [&] {
                if (!eps1) throw DomainError("diophantine system has no unique solution");
                return cutdown_certificate(ld, eps1->first, eps1->second, cutoff, 4, tol);
            }));
            certs.push_back(guarded("trace", [&] { return trace_certificate(ld); }));
            certs.push_back(guarded("phi_inner_scalarity", [&] { return scalarity_certificate(ld); }));
            certs.push_back(guarded("phase_congruences", [&] { return congruence_certificate(ld); }));
            certs.push_back(guarded("w0_unitary", [&] { return w0_certificate(ld); }));

            bool all = true;
            json arr = json::array();
            for (const auto& c : certs) {
                if (!c.skipped) all = all && c.pass;
                arr.push_back(to_json(c));
            }
            json doc = {{"command", "certify"},
                        {"theta", theta_json(conv.theta)},
                        {"input_theta", theta_json(theta)},
                        {"convergent",
                         {{"p", conv.p}, {"q", conv.q}, {"normalized", conv.normalized}, {"beta_sq", conv.beta_sq}}},
                        {"inputs", to_json(inputs_of(ld))},
                        {"tolerance", tol},
                        {"cutoff", cutoff},
                        {"override_abc", !override_abc.empty()},
                        {"certificates", arr},
                        {"pass", all}};
            if (emit_csv) {
                std::filesystem::path dir(out_dir);
                write_csv(dir / "ff_coefficients.csv", series_ff(ld, cutoff));
                write_csv(dir / "primitive_coefficients.csv", primitive_form(ld, cutoff));
                if (eps1) write_csv(dir / "fU1f_coefficients.csv", series_fU1f(ld, eps1->first, eps1->second, cutoff).series);
            }
            return emit(doc, out_dir, "certify", out);
        }
        if (c_vt->parsed()) {
            check_tol(tol);
            std::vector<Certificate> certs;
            for (cplx t : {cplx(0, 1), cplx(0, 2), cplx(0, 0.5), cplx(0.3, 1.1)}) {
                auto c = theta_identities_check(t, tol);
                c.notes = "t = " + std::to_string(t.real()) + " + " + std::to_string(t.imag()) + "i";
                certs.push_back(c);
            }
            certs.push_back(energy_check(grid_points, tol));
            Certificate tc;
            tc.claim = "theta_constants";
            double root2 = std::sqrt(2.0);
            double g = std::abs(theta_gap_g(1.0));
            double ratio = theta(3, 0, cplx(0, 0.5)).real() / theta(3, kPi / 2, cplx(0, 0.5)).real();
            tc.values["theta23_residual"] = g;
            tc.values["theta3_ratio_residual"] = std::abs(ratio - (1 + root2));
            tc.check("theta23_residual", g, std::max(tol, 1e-12));
            tc.check("theta3_ratio_residual", std::abs(ratio - (1 + root2)), std::max(tol, 1e-12));
            unsigned digits = extended_digits();
            auto ext = theta23_residual_ext(digits);
            auto ext_ratio = theta3_ratio_residual_ext(digits);
            double ext_tol = std::pow(10.0, -double(digits) / 2);
            tc.values["extended_digits"] = digits;
            tc.values["theta23_residual_extended"] = std::abs(ext.approx);
            tc.values["theta3_ratio_residual_extended"] = std::abs(ext_ratio.approx);
            tc.check("theta23_residual_extended", std::abs(ext.approx), ext_tol);
            tc.check("theta3_ratio_residual_extended", std::abs(ext_ratio.approx), ext_tol);
            tc.notes = "extended residual " + ext.text;
            tc.finish();
            certs.push_back(tc);
            bool all = true;
            json arr = json::array();
            for (const auto& c : certs) {
                all = all && c.pass;
                arr.push_back(to_json(c));
            }
            json doc = {{"command", "verify-theta"}, {"tolerance", tol}, {"grid_points", grid_points},
                        {"certificates", arr},       {"pass", all}};
            return emit(doc, out_dir, "verify-theta", out);
        }
        if (c_sp->parsed()) {
            auto [r, s] = parse_fraction(rho);
            if (probe) {
                if (r != s) throw CLI::ValidationError("--probe-scalar is defined at rho = 1 only");
                double v = scalar_probe(std::max(cutoff, 20));
                json doc = {{"command", "spectral"}, {"rho", "1"},   {"probe_scalar", v},
                            {"threshold", 1e-10},    {"pass", std::abs(v) < 1e-10}};
                return emit(doc, out_dir, "spectral", out);
            }
            auto rep = theorem64_spectral_check(r, s, cutoff);
            json doc = {{"command", "spectral"},
                        {"rho", std::to_string(rep.r) + "/" + std::to_string(rep.s)},
                        {"dimension", rep.dimension},
                        {"cutoff", rep.cutoff},
                        {"min_eigenvalue", rep.min_eigenvalue},
                        {"max_eigenvalue", rep.max_eigenvalue},
                        {"hermiticity_residual", rep.hermiticity_residual},
                        {"tail_budget", rep.tail_budget},
                        {"certificate", to_json(spectral_certificate(rep))},
                        {"pass", rep.pass}};
            return emit(doc, out_dir, "spectral", out);
        }
        if (c_gd->parsed()) {
            auto theta = th_scan.source();
            auto hits = gdelta_scan(theta, N, M, static_cast<std::size_t>(count));
            json arr = json::array();
            bool all = true;
            for (const auto& h : hits) {
                all = all && h.satisfied;
                arr.push_back({{"n", h.n},
                               {"p", str(h.p)},
                               {"q", str(h.q)},
                               {"beta_sq", h.beta_sq_value},
                               {"lower", h.lower.str()},
                               {"upper", h.upper.str()},
                               {"satisfied", h.satisfied}});
            }
            json doc = {{"command", "gdelta-scan"}, {"theta", theta_json(theta)}, {"N", N}, {"M", M},
                        {"hits", arr},              {"pass", all}};
            return emit(doc, out_dir, "gdelta-scan", out);
        }
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ScopeError& e) {
        err << "out of scope: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "bad input: " << e.what() << "\n";
        return kUsage;
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kClaimFailure;
    }
    return kUsage;
}

}  // namespace orbifold::cli
