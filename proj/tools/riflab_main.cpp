// riflab command line: inspect rational inner functions, run Carleson
// scaling scans, and reproduce the built-in case studies.
//
// Exit codes: 0 all analyses conclusive, 2 at least one inconclusive
// result, 1 usage or runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "riflab/detail/sampling.hpp"
#include "riflab/errors.hpp"
#include "riflab/gram.hpp"
#include "riflab/io.hpp"
#include "riflab/lojasiewicz.hpp"
#include "riflab/measure.hpp"
#include "riflab/rif.hpp"
#include "riflab/stability.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace riflab;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json | both
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000000;
    bool out_set = false, format_set = false, seed_set = false,
         samples_set = false;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw CLI::ValidationError("--config", "malformed JSON in " + path);
    return j;
}

// config fills in whatever the command line left at its default
void apply_config(GlobalOpts& g, const json& cfg) {
    if (!g.out_set && cfg.contains("out")) g.out_dir = cfg["out"];
    if (!g.format_set && cfg.contains("format")) g.format = cfg["format"];
    if (!g.seed_set && cfg.contains("seed"))
        g.seed = cfg["seed"].get<std::uint64_t>();
    if (!g.samples_set && cfg.contains("samples"))
        g.samples = cfg["samples"].get<std::uint64_t>();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + path.string());
    out << text;
}

bool want_csv(const GlobalOpts& g) {
    return g.format == "csv" || g.format == "both";
}
bool want_json(const GlobalOpts& g) {
    return g.format == "json" || g.format == "both";
}

std::string fmt_cd(cd v) {
    std::ostringstream ss;
    ss << io::format_double(v.real());
    if (v.imag() != 0.0)
        ss << (v.imag() > 0 ? "+" : "") << io::format_double(v.imag()) << "i";
    return ss.str();
}

int cmd_reflect(const GlobalOpts& g, const std::string& input) {
    Poly2 p = io::load_poly(input);
    Poly2 q = reflect(p);
    fs::path out = fs::path(g.out_dir) /
                   (fs::path(input).stem().string() + ".reflected.json");
    fs::create_directories(out.parent_path().empty() ? "."
                                                     : out.parent_path());
    io::save_poly(q, out);
    std::printf("%s\n", out.string().c_str());
    return 0;
}

int cmd_rif_info(const GlobalOpts& g, const std::string& input,
                 bool write_report) {
    RationalInnerFunction phi = io::load_rif(input);
    json report;
    report["input"] = input;
    report["lambda"] = {{"re", phi.lambda().real()},
                        {"im", phi.lambda().imag()}};
    report["monomial_powers"] = {phi.power1(), phi.power2()};
    report["bidegree"] = {phi.denominator().deg1(), phi.denominator().deg2()};
    report["symbol_hash"] = io::content_hash(io::serialize_rif(phi));

    std::printf("lambda = %s, monomial powers (%d, %d), bidegree (%d, %d)\n",
                fmt_cd(phi.lambda()).c_str(), phi.power1(), phi.power2(),
                phi.denominator().deg1(), phi.denominator().deg2());
    json sings = json::array();
    std::printf("torus singularities: %zu\n", phi.singularities().size());
    for (const TorusPoint& tau : phi.singularities()) {
        json s;
        s["theta"] = {tau.theta1, tau.theta2};
        std::printf("  theta = (%s, %s)", io::format_double(tau.theta1).c_str(),
                    io::format_double(tau.theta2).c_str());
        try {
            cd v = nontangential_value(phi, tau);
            s["nontangential_value"] = {{"re", v.real()}, {"im", v.imag()}};
            std::printf("  radial limit %s", fmt_cd(v).c_str());
        } catch (const Error&) {
            s["nontangential_value"] = nullptr;
            std::printf("  radial limit unstable");
        }
        std::printf("\n");
        sings.push_back(s);
    }
    report["singularities"] = sings;

    StabilityResult st =
        certify_stable(phi.denominator(), Region::OpenBidisc, 100000);
    report["denominator_open_bidisc"] = to_string(st.verdict);
    std::printf("denominator on the open bidisc: %s\n", to_string(st.verdict));

    if (write_report) {
        fs::create_directories(g.out_dir);
        fs::path out = fs::path(g.out_dir) /
                       (fs::path(input).stem().string() + ".info.json");
        write_text(out, report.dump(2) + "\n");
        std::printf("report: %s\n", out.string().c_str());
    }
    return 0;
}

struct CarlesonArgs {
    double beta_src = 0.0, beta_tgt = 0.0;
    std::vector<std::string> centers; // "t1,t2" angle pairs
    std::vector<double> deltas = {0.5, 0.25, 0.125, 0.0625};
    double stratum_fraction = 0.5;
    double stratum_radius = 1.0;
};

int cmd_carleson(const GlobalOpts& g, const std::string& input,
                 const CarlesonArgs& args) {
    RationalInnerFunction phi = io::load_rif(input);
    SymbolMap map = SymbolMap::diagonal(phi);

    std::vector<TorusPoint> centers;
    for (const std::string& spec : args.centers) {
        double t1 = 0.0, t2 = 0.0;
        if (std::sscanf(spec.c_str(), "%lf,%lf", &t1, &t2) != 2)
            fail(ErrorKind::ParseError,
                 "--center wants 'theta1,theta2', got '" + spec + "'");
        centers.push_back({t1, t2});
    }
    if (centers.empty()) {
        centers = phi.singularities();
        if (centers.empty()) centers.push_back({0.0, 0.0});
    }

    fs::create_directories(g.out_dir);
    int inconclusive = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        SamplerSpec sp;
        sp.n = g.samples;
        sp.seed = g.seed;
        if (args.stratum_fraction > 0.0)
            sp.stratum = Stratum{centers[i], args.stratum_fraction,
                                 args.stratum_radius, 0.0};
        CarlesonScan scan = carleson_scan(map, args.beta_src, args.beta_tgt,
                                          centers[i], args.deltas, sp);
        std::string base = "carleson_" + std::to_string(i);
        if (want_csv(g))
            write_text(fs::path(g.out_dir) / (base + ".csv"),
                       io::scan_to_csv(scan));
        if (want_json(g))
            write_text(fs::path(g.out_dir) / (base + ".json"),
                       io::scan_to_json(scan, sp.seed, true));
        std::printf(
            "center (%s, %s): exponent %.4f +- %.4f (reference %g), %s\n",
            io::format_double(centers[i].theta1).c_str(),
            io::format_double(centers[i].theta2).c_str(), scan.fit.exponent,
            scan.fit.exponent_stderr, 2.0 * args.beta_src + 4.0,
            scan.verdict.c_str());
        if (scan.verdict == "inconclusive") ++inconclusive;
    }
    return inconclusive > 0 ? 2 : 0;
}

// ---------------------------------------------------------------------------
// built-in case studies

struct CaseRow {
    std::string case_name, analysis, result, expected;
    bool ok = false;
};

Poly2 line_poly(double c0, double c1, double c2) {
    Poly2 p(1, 1);
    p.at(0, 0) = c0;
    p.at(1, 0) = c1;
    p.at(0, 1) = c2;
    return p;
}

void run_case(std::vector<CaseRow>& rows, const std::string& case_name,
              const std::string& analysis, const std::string& expected,
              const std::function<std::string()>& body) {
    CaseRow row{case_name, analysis, "", expected, false};
    try {
        row.result = body();
    } catch (const std::exception& e) {
        row.result = std::string("error: ") + e.what();
    }
    row.ok = row.result == expected;
    rows.push_back(row);
}

int cmd_examples(const GlobalOpts& g, double scale) {
    fs::create_directories(g.out_dir);
    auto scaled = [&](std::uint64_t base) {
        auto n = static_cast<std::uint64_t>(static_cast<double>(base) * scale);
        return std::max<std::uint64_t>(n, 20000);
    };
    std::vector<CaseRow> rows;
    TorusPoint corner{0.0, 0.0};

    // Case A: p = 2 - z1 - z2. Inner, one boundary singularity at (1, 1);
    // composition into a heavily weighted target scales like a Carleson box.
    Poly2 fav = line_poly(2.0, -1.0, -1.0);
    RationalInnerFunction phi_a = make_rif(cd(1.0, 0.0), 0, 0, fav);
    run_case(rows, "corner-contact", "sos-certificate", "valid", [&] {
        SosCertificate cert;
        Poly2 q1(0, 1), q2(1, 0);
        q1.at(0, 0) = std::sqrt(2.0);
        q1.at(0, 1) = -std::sqrt(2.0);
        q2.at(0, 0) = std::sqrt(2.0);
        q2.at(1, 0) = -std::sqrt(2.0);
        cert.sos1.push_back(q1);
        cert.sos2.push_back(q2);
        return verify_sos_certificate(fav, cert).valid ? "valid" : "invalid";
    });
    run_case(rows, "corner-contact", "target-scaling-beta8", "passes", [&] {
        SamplerSpec sp;
        sp.n = scaled(g.samples);
        sp.seed = g.seed;
        sp.stratum = Stratum{corner, 0.5, 1.0, 0.0};
        CarlesonScan scan =
            carleson_scan(SymbolMap::diagonal(phi_a), 0.0, 8.0, corner,
                          {0.5, 0.25, 0.125, 0.0625}, sp);
        write_text(fs::path(g.out_dir) / "corner_contact_beta8.csv",
                   io::scan_to_csv(scan));
        return scan.verdict;
    });

    // Case B: the sign-flipped symbol sends the same corner to +1 and drags
    // a fat sublevel tube along; the unweighted target sees too much mass.
    RationalInnerFunction phi_b = make_rif(cd(-1.0, 0.0), 0, 0, fav);
    run_case(rows, "sign-flip", "target-scaling-beta0", "fails", [&] {
        SamplerSpec sp;
        sp.n = scaled(g.samples);
        sp.seed = g.seed + 1;
        sp.stratum = Stratum{corner, 0.5, 1.0, 0.0};
        CarlesonScan scan = carleson_scan(
            SymbolMap::diagonal(phi_b), 0.0, 0.0, corner,
            {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625}, sp);
        write_text(fs::path(g.out_dir) / "sign_flip_beta0.csv",
                   io::scan_to_csv(scan));
        return scan.verdict;
    });
    run_case(rows, "sign-flip", "gram-ladder", "growth", [&] {
        QuadratureSpec qs;
        NormGrowthScan ng = norm_growth_scan(SymbolMap::diagonal(phi_b),
                                             {2, 4, 8, 12}, 0.0, 0.0, qs);
        write_text(
            fs::path(g.out_dir) / "sign_flip_gram.csv",
            io::norm_scan_to_csv(
                ng, 0.0, 0.0,
                io::content_hash(io::serialize_rif(phi_b))));
        return ng.verdict;
    });

    // Case C: p = 3 - z1 - z2 stays away from the closed bidisc entirely;
    // everything downstream of the certificate should look bounded.
    Poly2 st3 = line_poly(3.0, -1.0, -1.0);
    RationalInnerFunction phi_c = make_rif(cd(1.0, 0.0), 0, 0, st3);
    run_case(rows, "clear-margin", "stability-certificate",
             "certified-stable-closed", [&] {
                 return std::string(to_string(
                     certify_stable(st3, Region::ClosedBidisc).verdict));
             });
    run_case(rows, "clear-margin", "gap-infimum-positive", "positive", [&] {
        SamplerSpec sp;
        sp.n = scaled(200000);
        sp.seed = g.seed + 2;
        BickelEstimate be = estimate_bickel_constant(st3, sp);
        return be.inf_ratio > 0.0 ? "positive" : "nonpositive";
    });
    run_case(rows, "clear-margin", "boundary-clearance", "holds", [&] {
        SamplerSpec sp;
        sp.n = scaled(200000);
        sp.seed = g.seed + 3;
        BickelEstimate be = estimate_bickel_constant(st3, sp);
        double c = be.inf_ratio / 50.0;
        detail::Rng rng(g.seed + 4);
        for (int k = 0; k < 20000; ++k) {
            cd z1 = rng.next_disc(), z2 = rng.next_disc();
            double uv = (1.0 - std::norm(z1)) * (1.0 - std::norm(z2));
            if (1.0 - std::abs(eval_rif(phi_c, z1, z2)) < c * uv - 1e-9)
                return "violated";
        }
        return "holds";
    });
    run_case(rows, "clear-margin", "gram-ladder", "plateau", [&] {
        QuadratureSpec qs;
        NormGrowthScan ng = norm_growth_scan(SymbolMap::diagonal(phi_c),
                                             {2, 4, 8, 12}, 1.0, 6.0, qs);
        write_text(
            fs::path(g.out_dir) / "clear_margin_gram.csv",
            io::norm_scan_to_csv(
                ng, 1.0, 6.0,
                io::content_hash(io::serialize_rif(phi_c))));
        return ng.verdict;
    });

    std::string csv = "case,analysis,result,expected,status\n";
    json jrows = json::array();
    int inconclusive = 0;
    for (const CaseRow& r : rows) {
        std::string status = r.ok ? "ok" : "inconclusive";
        if (!r.ok) ++inconclusive;
        csv += r.case_name + "," + r.analysis + "," + r.result + "," +
               r.expected + "," + status + "\n";
        std::printf("%-14s %-26s %-24s [%s]\n", r.case_name.c_str(),
                    r.analysis.c_str(), r.result.c_str(), status.c_str());
        jrows.push_back({{"case", r.case_name},
                         {"analysis", r.analysis},
                         {"result", r.result},
                         {"expected", r.expected},
                         {"status", status}});
    }
    if (want_csv(g))
        write_text(fs::path(g.out_dir) / "examples_summary.csv", csv);
    if (want_json(g)) {
        json j;
        j["seed"] = g.seed;
        j["scale"] = scale;
        j["rows"] = jrows;
        write_text(fs::path(g.out_dir) / "examples_summary.json",
                   j.dump(2) + "\n");
    }
    return inconclusive > 0 ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for rational inner functions on the "
                 "bidisc"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOpts g;
    auto* oc = app.add_option("--config", g.config_path,
                              "JSON config file (CLI flags win)");
    auto* oo = app.add_option("--out", g.out_dir, "output directory");
    auto* of = app.add_option("--format", g.format, "csv, json or both")
                   ->check(CLI::IsMember({"csv", "json", "both"}));
    auto* os = app.add_option("--seed", g.seed, "Monte Carlo seed");
    auto* on = app.add_option("--samples", g.samples,
                              "Monte Carlo samples per estimate");

    std::string input;
    auto* reflect_cmd =
        app.add_subcommand("reflect", "reflect a polynomial at its bidegree");
    reflect_cmd->add_option("input", input, "polynomial JSON file")
        ->required();

    bool info_report = false;
    auto* info_cmd = app.add_subcommand(
        "rif-info", "validate a symbol and report its boundary data");
    info_cmd->add_option("input", input, "symbol JSON file")->required();
    info_cmd->add_flag("--report", info_report, "write <stem>.info.json");

    CarlesonArgs cargs;
    auto* carleson_cmd = app.add_subcommand(
        "carleson", "pullback-volume scaling scan at torus centers");
    carleson_cmd->add_option("input", input, "symbol JSON file")->required();
    carleson_cmd->add_option("--beta-src", cargs.beta_src, "source weight");
    carleson_cmd->add_option("--beta-tgt", cargs.beta_tgt, "target weight");
    carleson_cmd->add_option("--center", cargs.centers,
                             "torus center 'theta1,theta2' (repeatable; "
                             "default: the symbol's singularities)");
    carleson_cmd->add_option("--deltas", cargs.deltas, "box radii");
    carleson_cmd->add_option("--stratum-fraction", cargs.stratum_fraction,
                             "stratified sample fraction (0 disables)");
    carleson_cmd->add_option("--stratum-radius", cargs.stratum_radius,
                             "stratum annulus radius");

    double scale = 1.0;
    auto* examples_cmd = app.add_subcommand(
        "examples", "run the three built-in case studies");
    examples_cmd->add_option("--scale", scale,
                             "sample count multiplier (< 1 for smoke runs)");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(g.config_path);
        (void)oc;
        g.out_set = oo->count() > 0;
        g.format_set = of->count() > 0;
        g.seed_set = os->count() > 0;
        g.samples_set = on->count() > 0;
        apply_config(g, cfg);
        if (carleson_cmd->parsed() && cfg.contains("carleson")) {
            const json& c = cfg["carleson"];
            if (carleson_cmd->count("--beta-src") == 0 &&
                c.contains("beta_src"))
                cargs.beta_src = c["beta_src"];
            if (carleson_cmd->count("--beta-tgt") == 0 &&
                c.contains("beta_tgt"))
                cargs.beta_tgt = c["beta_tgt"];
            if (carleson_cmd->count("--deltas") == 0 && c.contains("deltas"))
                cargs.deltas = c["deltas"].get<std::vector<double>>();
        }

        if (reflect_cmd->parsed()) return cmd_reflect(g, input);
        if (info_cmd->parsed()) return cmd_rif_info(g, input, info_report);
        if (carleson_cmd->parsed()) return cmd_carleson(g, input, cargs);
        if (examples_cmd->parsed()) return cmd_examples(g, scale);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
