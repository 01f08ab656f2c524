// Drives the installed CLI binary end to end: determinism, config echo
// round-trip, exit codes, and format shape.
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

using json = nlohmann::ordered_json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "[FAIL] " << what << "\n";
        ++failures;
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* p = popen(full.c_str(), "r");
    RunResult r{-1, {}};
    if (!p) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-cli>\n";
        return 2;
    }
    std::string cli = argv[1];

    // deterministic output for a fixed configuration
    std::string eval_cmd = cli + " eval --spec semicircle --zlist '0,2;1,1;-0.5,0.8'";
    RunResult a = run(eval_cmd), b = run(eval_cmd);
    check(a.exit_code == 0, "eval exits 0");
    check(a.out == b.out, "eval output is byte-identical across runs");

    // config echo block reparses and re-serializes byte-identically
    json doc = json::parse(a.out);
    check(doc.contains("config") && doc.contains("results") && doc.contains("errors"),
          "top-level object has config/results/errors");
    std::string echo1 = doc["config"].dump(2);
    std::string echo2 = json::parse(doc.dump(2))["config"].dump(2);
    check(echo1 == echo2, "config echo round-trips byte-identically");
    check(json::parse(a.out).dump(2) + "\n" == a.out, "whole document reserializes byte-identically");
    check(doc["results"].size() == 3, "one record per z");
    check(std::abs(doc["results"][0]["G"]["im"].get<double>() -
                   (2.0 - std::sqrt(8.0)) / 2.0) < 1e-12,
          "semicircle value at 2i");

    // csv format: header plus one line per record, CRLF separators
    RunResult csv = run(cli + " --format csv eval --spec 'point:1' --zlist '0,2'");
    check(csv.exit_code == 0, "csv eval exits 0");
    check(csv.out.rfind("re_z,im_z,", 0) == 0, "csv header row present");
    check(csv.out.find("\r\n") != std::string::npos, "csv uses CRLF");

    // density of the uniform law is 1 in the interior
    RunResult dens = run(cli + " density --spec beta:1:1 --xmin 0.3 --xmax 0.7 --n 5");
    check(dens.exit_code == 0, "density exits 0");
    json dd = json::parse(dens.out);
    bool unif_ok = true;
    for (const auto& rec : dd["results"])
        unif_ok = unif_ok && std::abs(rec["density"].get<double>() - 1.0) < 1e-7;
    check(unif_ok, "uniform density recovered");

    // fid verdicts and exit codes
    RunResult fid1 = run(cli + " fid --spec beta:2:3");
    check(fid1.exit_code == 0, "fid exits 0");
    check(json::parse(fid1.out)["results"]["overall"] == "KnownFID", "beta(2,3) is known FID");

    RunResult fid2 = run(cli + " fid --spec exp --kmax 16");
    json f2 = json::parse(fid2.out);
    check(f2["results"]["overall"] == "CertifiedNotFID", "exponential certified not FID");
    // determinants turn negative at order 14 and stay negative through 16
    check(f2["results"]["hankel"]["hankel_order"] == 14, "first negative order is 14");

    RunResult fid3 = run(cli + " --strict fid --spec 'betaprime:1:1' --kmax 2");
    check(fid3.exit_code == 3, "strict inconclusive exits 3");

    // asymmetric parameters land on the right edges
    RunResult fide = run(cli + " fid --spec beta:0.6:5 --kmax 2");
    json fe = json::parse(fide.out);
    check(fe["results"]["exponents"][0]["edge"] == "left" &&
              std::abs(fe["results"]["exponents"][0]["alpha"].get<double>() - 0.6) < 1e-15,
          "left edge exponent is p");
    check(fe["results"]["exponents"][1]["in_I"] == false, "right edge exponent not exceptional");

    RunResult fid4 = run(cli + " fid --spec beta:0.55:0.55 --kmax 4");
    json f4 = json::parse(fid4.out);
    check(f4["results"]["overall"] == "CertifiedNotFID", "small beta certified not FID");
    check(f4["results"]["endpoint"]["status"] == "CertifiedNotFID",
          "endpoint test contributes evidence");

    // usage errors exit 1
    RunResult bad = run(cli + " eval --spec nosuch:1 --zlist '0,1'");
    check(bad.exit_code == 1, "unknown family exits 1");

    // trace emits the curve as CSV
    RunResult tr = run(cli + " --format csv trace --spec 'betaprime:5:2' --anchor at_zero");
    check(tr.exit_code == 0, "trace exits 0");
    check(tr.out.rfind("re_z,im_z,G", 0) == 0, "trace csv header");
    check(tr.out.size() > 1000, "trace produced points");

    // indicator probe as JSON
    RunResult ind = run(cli + " indicator --spec gauss --t 0.9,1.5");
    json ij = json::parse(ind.out);
    check(ij["results"][0]["critical"] == false, "no critical pair below t=1");
    check(ij["results"][1]["critical"] == true, "critical pair above t=1");
    check(ij["results"][1]["y1"].get<double>() > 0.0, "witness ordinate positive");

    // selftest suites
    RunResult st = run(cli + " selftest --suite semigroup");
    check(st.exit_code == 0, "selftest semigroup passes");

    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
