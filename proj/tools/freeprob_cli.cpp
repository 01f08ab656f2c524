// Command-line front end: transform evaluation, density recovery, FID
// classification, level-curve tracing and indicator probes, emitted as JSON
// or RFC-4180 CSV for downstream plotting.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "freeprob/batch.hpp"
#include "freeprob/conditions.hpp"
#include "freeprob/fid.hpp"
#include "freeprob/indicator.hpp"
#include "freeprob/parallel.hpp"
#include "freeprob/trace.hpp"
#include "freeprob/transforms.hpp"

using json = nlohmann::ordered_json;
using namespace freeprob;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInconclusiveStrict = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json cplx_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void write_out(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << payload;
}

std::vector<cplx> parse_zlist(const std::string& zlist) {
    // "re,im;re,im;..."
    std::vector<cplx> out;
    std::stringstream ss(zlist);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (tok.empty()) continue;
        auto comma = tok.find(',');
        if (comma == std::string::npos) throw BadSpec("zlist entry needs re,im: " + tok);
        out.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    return out;
}

struct CommonOpts {
    std::string spec;
    std::string out;
    std::string format = "json";
    double tol = 1e-10;
    bool strict = false;
    unsigned seed = 0;
};

json config_echo(const CommonOpts& c, const std::string& command, json extra) {
    json cfg;
    cfg["command"] = command;
    cfg["spec"] = c.spec;
    cfg["format"] = c.format;
    cfg["tol"] = c.tol;
    cfg["strict"] = c.strict;
    cfg["seed"] = c.seed;
    cfg["threads"] = par::worker_count();
    for (auto& [k, v] : extra.items()) cfg[k] = v;
    return cfg;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

int emit(const CommonOpts& c, json doc, const std::string& csv) {
    if (c.format == "csv")
        write_out(c.out, csv);
    else
        write_out(c.out, doc.dump(2) + "\n");
    return kExitOk;
}

json verdict_json(const FidVerdict& v) {
    json j;
    j["status"] = fid_status_name(v.status);
    j["reason"] = fid_reason_name(v.reason);
    j["citation"] = v.citation;
    j["evidence"] = v.evidence;
    if (v.hankel_order > 0) j["hankel_order"] = v.hankel_order;
    return j;
}

int cmd_eval(const CommonOpts& c, const std::string& zlist, const std::string& zfile) {
    Dist d = Dist::parse(c.spec);
    std::vector<cplx> zs;
    if (!zfile.empty()) {
        std::ifstream f(zfile);
        if (!f) throw BadSpec("cannot open zfile: " + zfile);
        std::stringstream buf;
        buf << f.rdbuf();
        std::string all = buf.str();
        for (char& ch : all)
            if (ch == '\n') ch = ';';
        zs = parse_zlist(all);
    } else {
        zs = parse_zlist(zlist);
    }
    auto recs = eval_grid(d, zs);

    json doc;
    doc["config"] = config_echo(c, "eval", {{"n", zs.size()}});
    json results = json::array();
    json errors = json::array();
    std::ostringstream csv;
    csv << "re_z,im_z,re_G,im_G,re_F,im_F,re_eta,im_eta,side,error\r\n";
    int numeric_failures = 0;
    for (const EvalRecord& r : recs) {
        json rec;
        rec["z"] = cplx_json(r.z);
        if (r.error.empty()) {
            rec["G"] = cplx_json(r.G);
            rec["F"] = cplx_json(r.F);
            rec["eta"] = cplx_json(r.eta);
            rec["side"] = r.side;
        } else {
            rec["error"] = r.error;
            errors.push_back(r.error);
            ++numeric_failures;
        }
        results.push_back(rec);
        csv << fmt17(r.z.real()) << "," << fmt17(r.z.imag()) << "," << fmt17(r.G.real()) << ","
            << fmt17(r.G.imag()) << "," << fmt17(r.F.real()) << "," << fmt17(r.F.imag()) << ","
            << fmt17(r.eta.real()) << "," << fmt17(r.eta.imag()) << "," << r.side << ","
            << csv_escape(r.error) << "\r\n";
    }
    doc["results"] = results;
    doc["errors"] = errors;
    int rc = emit(c, doc, csv.str());
    return numeric_failures == static_cast<int>(recs.size()) && !recs.empty() ? kExitNumeric : rc;
}

int cmd_density(const CommonOpts& c, double xmin, double xmax, int n) {
    Dist d = Dist::parse(c.spec);
    auto recs = density_grid(d, xmin, xmax, n);
    json doc;
    doc["config"] = config_echo(c, "density", {{"xmin", xmin}, {"xmax", xmax}, {"n", n}});
    json results = json::array();
    json errors = json::array();
    std::ostringstream csv;
    csv << "x,density,err_est\r\n";
    for (const DensityRecord& r : recs) {
        json rec;
        rec["x"] = r.x;
        if (r.error.empty()) {
            rec["density"] = r.density;
            rec["err_est"] = r.err_est;
        } else {
            rec["error"] = r.error;
            errors.push_back(r.error);
        }
        results.push_back(rec);
        csv << fmt17(r.x) << "," << fmt17(r.density) << "," << fmt17(r.err_est) << "\r\n";
    }
    doc["results"] = results;
    doc["errors"] = errors;
    return emit(c, doc, csv.str());
}

int cmd_fid(const CommonOpts& c, int kmax, bool probes) {
    Dist d = Dist::parse(c.spec);
    json doc;
    doc["config"] = config_echo(c, "fid", {{"kmax", kmax}, {"probes", probes}});
    json results;

    FidVerdict region = region_classifier(d);
    results["region"] = verdict_json(region);

    // edge exponent reports where the density has power edges
    json exps = json::array();
    auto add_exp = [&](const char* which, const Rational& a) {
        try {
            ExponentReport er = classify_exponent(a.value());
            json e;
            e["edge"] = which;
            e["alpha"] = a.value();
            e["in_I"] = er.in_I;
            e["theta_alpha"] = er.theta_alpha;
            if (er.in_I) e["interval_n"] = er.interval_n;
            exps.push_back(e);
        } catch (const AlphaOne&) {
        }
    };
    Dist base = d.base();
    if (base.family == Family::Beta) {
        add_exp("left", base.p);
        add_exp("right", base.q);
    } else if (base.family == Family::BetaPrime || base.family == Family::Gamma) {
        add_exp("left", base.p);
    }
    results["exponents"] = exps;

    FidStatus overall = region.status;
    try {
        FidVerdict hank = hankel_fid_test(d, kmax);
        results["hankel"] = verdict_json(hank);
        if (hank.status == FidStatus::CertifiedNotFID) overall = FidStatus::CertifiedNotFID;
    } catch (const std::exception& e) {
        results["hankel"] = json{{"error", e.what()}};
    }
    if (base.family == Family::Beta && base.p <= Rational(1) && base.q <= Rational(1)) {
        try {
            FidVerdict ep = subordination_endpoint_test(base);
            results["endpoint"] = verdict_json(ep);
            if (ep.status == FidStatus::CertifiedNotFID) overall = FidStatus::CertifiedNotFID;
        } catch (const std::exception& e) {
            results["endpoint"] = json{{"error", e.what()}};
        }
    }
    if (probes && base.symmetric()) {
        try {
            IndicatorProbe p = indicator_probe(base, 1.5);
            json pj;
            pj["t"] = 1.5;
            pj["monotone_f"] = p.monotone_f;
            pj["critical"] = p.has_critical;
            if (p.has_critical) {
                pj["y0"] = p.y0;
                pj["y1"] = p.y1;
            }
            results["indicator"] = pj;
        } catch (const std::exception& e) {
            results["indicator"] = json{{"error", e.what()}};
        }
    }
    results["overall"] = fid_status_name(overall);
    doc["results"] = results;
    doc["errors"] = json::array();
    int rc = emit(c, doc, doc.dump(2) + "\n");
    if (rc == kExitOk && c.strict && overall == FidStatus::Inconclusive)
        return kExitInconclusiveStrict;
    return rc;
}

int cmd_trace(const CommonOpts& c, const std::string& anchor_s, double rmax) {
    Dist d = Dist::parse(c.spec);
    Anchor anchor;
    if (anchor_s == "at_zero") anchor = Anchor::AtZero;
    else if (anchor_s == "at_one") anchor = Anchor::AtOne;
    else if (anchor_s == "at_minus_one") anchor = Anchor::AtMinusOne;
    else if (anchor_s == "at_infinity") anchor = Anchor::AtInfinity;
    else throw BadSpec("anchor must be at_zero|at_one|at_minus_one|at_infinity");

    TraceOptions opt;
    opt.r_max = rmax;
    CurveTrace tr = trace_real_level_curve(d, anchor, opt);

    json doc;
    doc["config"] = config_echo(c, "trace", {{"anchor", anchor_s}, {"rmax", rmax}});
    json results;
    results["start_anchor"] = anchor_name(tr.start_anchor);
    results["end_state"] = end_state_name(tr.end_state);
    results["note"] = tr.note;
    results["n_points"] = tr.points.size();
    if (tr.end_state == EndState::ReachedPoint) results["end_point"] = cplx_json(tr.end_point);
    if (tr.end_state == EndState::ReachedInfinity) results["end_radius"] = tr.end_radius;
    json pts = json::array();
    std::ostringstream csv;
    csv << "re_z,im_z,G\r\n";
    for (size_t i = 0; i < tr.points.size(); ++i) {
        pts.push_back(json{{"re", tr.points[i].real()},
                           {"im", tr.points[i].imag()},
                           {"G", tr.g_values[i]}});
        csv << fmt17(tr.points[i].real()) << "," << fmt17(tr.points[i].imag()) << ","
            << fmt17(tr.g_values[i]) << "\r\n";
    }
    results["points"] = pts;
    doc["results"] = results;
    doc["errors"] = json::array();
    return emit(c, doc, csv.str());
}

int cmd_indicator(const CommonOpts& c, const std::string& tlist, const std::string& yrange) {
    Dist d = Dist::parse(c.spec);
    std::vector<double> ts;
    {
        std::stringstream ss(tlist);
        std::string tok;
        while (std::getline(ss, tok, ',')) ts.push_back(std::stod(tok));
    }
    std::optional<std::pair<double, double>> yr;
    if (!yrange.empty()) {
        auto comma = yrange.find(',');
        if (comma == std::string::npos) throw BadSpec("yrange needs lo,hi");
        yr = {std::stod(yrange.substr(0, comma)), std::stod(yrange.substr(comma + 1))};
    }
    json doc;
    doc["config"] = config_echo(c, "indicator", {{"t", tlist}, {"yrange", yrange}});
    json results = json::array();
    json errors = json::array();
    for (double t : ts) {
        json rec;
        rec["t"] = t;
        try {
            IndicatorProbe p =
                yr ? indicator_probe(d, t, yr->first, yr->second) : indicator_probe(d, t);
            rec["monotone_f"] = p.monotone_f;
            rec["critical"] = p.has_critical;
            if (p.has_critical) {
                rec["y0"] = p.y0;
                rec["y1"] = p.y1;
            }
        } catch (const std::exception& e) {
            rec["error"] = e.what();
            errors.push_back(e.what());
        }
        results.push_back(rec);
    }
    doc["results"] = results;
    doc["errors"] = errors;
    return emit(c, doc, doc.dump(2) + "\n");
}

int cmd_selftest(const CommonOpts& c, const std::string& suite) {
    json doc;
    doc["config"] = config_echo(c, "selftest", {{"suite", suite}});
    json results = json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, const std::string& detail) {
        results.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    if (suite == "transforms" || suite == "all") {
        Dist arc = Dist::beta(Rational(1, 2), Rational(1, 2));
        double worst = 0.0;
        for (cplx z : {cplx(0.3, 1.0), cplx(-1.0, 0.5), cplx(2.0, 2.0)}) {
            cplx closed = std::pow(1.0 - 1.0 / z, -0.5) / z;
            worst = std::max(worst, std::abs(cauchy_G(arc, z) - closed));
            worst = std::max(worst, std::abs(cauchy_G_quad(arc, z) - closed));
        }
        record("transforms.closed_form_agreement", worst < 1e-10,
               "max deviation " + fmt17(worst));
    }
    if (suite == "cumulants" || suite == "all") {
        auto m = exact_moments(Dist::gamma_dist(Rational(1)), 10);
        auto r = free_cumulants(m);
        auto back = moments_from_free_cumulants(r.values);
        bool exact = true;
        for (int n = 1; n <= 10; ++n) exact = exact && back[n - 1] == m.m(n);
        record("cumulants.round_trip_exact", exact, "orders 1..10");
    }
    if (suite == "semigroup" || suite == "all") {
        Dist a = Dist::beta(Rational(1, 2), Rational(1, 2));
        Dist ab = Dist::beta(Rational(1, 4), Rational(3, 4));
        double worst = 0.0;
        for (double z = -9.5; z < -0.02; z += 0.34) {
            cplx inner = eta_transform(a, {z, 0.0});
            cplx lhs = eta_transform(a, inner);
            cplx rhs = eta_transform(ab, {z, 0.0});
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        record("semigroup.eta_composition", worst < 1e-12, "max residual " + fmt17(worst));
    }
    if (suite == "ode" || suite == "all") {
        double worst = 0.0;
        worst = std::max(worst, ode_residual(Dist::beta(Rational(2), Rational(3)), {1.0, 1.0}));
        worst = std::max(worst, ode_residual(Dist::beta_prime(Rational(1), Rational(2)), {0.0, 2.0}));
        worst = std::max(worst, ode_residual(Dist::student_t(Rational(2)), {0.5, 0.7}));
        record("ode.residuals", worst < 1e-8, "max residual " + fmt17(worst));
    }
    doc["results"] = results;
    doc["errors"] = json::array();
    int rc = emit(c, doc, doc.dump(2) + "\n");
    return rc == kExitOk && !all_pass ? kExitNumeric : rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transform evaluation and free-infinite-divisibility toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--out", common.out, "output path (default stdout)");
    app.add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", common.tol, "numeric tolerance hint");
    app.add_flag("--strict", common.strict, "exit 3 when the verdict is inconclusive");
    app.add_option("--seed", common.seed, "seed for Newton start jitter");

    auto* eval = app.add_subcommand("eval", "evaluate G, F and eta on a z-list");
    std::string zlist, zfile;
    eval->add_option("--spec", common.spec, "distribution spec")->required();
    eval->add_option("--zlist", zlist, "semicolon-separated re,im pairs");
    eval->add_option("--zfile", zfile, "file with one re,im pair per line");

    auto* density = app.add_subcommand("density", "recover the density on a grid");
    double xmin = 0.0, xmax = 1.0;
    int ngrid = 101;
    density->add_option("--spec", common.spec)->required();
    density->add_option("--xmin", xmin)->required();
    density->add_option("--xmax", xmax)->required();
    density->add_option("--n", ngrid);

    auto* fid = app.add_subcommand("fid", "free-infinite-divisibility verdict bundle");
    int kmax = 16;
    bool probes = false;
    fid->add_option("--spec", common.spec)->required();
    fid->add_option("--kmax", kmax, "largest Hankel order to scan");
    fid->add_flag("--probes", probes, "include the indicator probe for symmetric laws");

    auto* trace = app.add_subcommand("trace", "trace a real level curve of the transform");
    std::string anchor = "at_zero";
    double rmax = 1e3;
    trace->add_option("--spec", common.spec)->required();
    trace->add_option("--anchor", anchor);
    trace->add_option("--rmax", rmax);

    auto* indicator = app.add_subcommand("indicator", "Boolean-power indicator probe");
    std::string tlist = "1.5", yrange;
    indicator->add_option("--spec", common.spec)->required();
    indicator->add_option("--t", tlist, "comma-separated t values");
    indicator->add_option("--yrange", yrange, "lo,hi probe window");

    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
    std::string suite = "all";
    selftest->add_option("--suite", suite)
        ->check(CLI::IsMember({"transforms", "cumulants", "semigroup", "ode", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(eval)) return cmd_eval(common, zlist, zfile);
        if (app.got_subcommand(density)) return cmd_density(common, xmin, xmax, ngrid);
        if (app.got_subcommand(fid)) return cmd_fid(common, kmax, probes);
        if (app.got_subcommand(trace)) return cmd_trace(common, anchor, rmax);
        if (app.got_subcommand(indicator)) return cmd_indicator(common, tlist, yrange);
        if (app.got_subcommand(selftest)) return cmd_selftest(common, suite);
    } catch (const BadSpec& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
