// Command-line front end: search, eval, family, verify, probe, export, table.
// Every run can emit a JSON report with a manifest sufficient to reproduce it
// bit-for-bit on one thread. Exit codes: 0 success, 2 usage error,
// 3 degenerate input, 4 certification failure.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polymin/builtins.hpp"
#include "polymin/certify.hpp"
#include "polymin/families.hpp"
#include "polymin/functionals.hpp"
#include "polymin/off_io.hpp"
#include "polymin/probes.hpp"
#include "polymin/report.hpp"
#include "polymin/search.hpp"

using namespace polymin;

namespace {

// Resolves builtin:<name> or an OFF file path; records file inputs in the
// manifest when one is read.
Configuration resolve_config(const std::string& ref, RunManifest& manifest) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) return builtin(ref.substr(prefix.size()));
    Configuration c = configuration_from_off(read_off_file(ref), ref);
    manifest.inputs[ref] = file_hash(ref);
    return c;
}

std::string valency_string(const ValencyVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

ordered_json certificate_json(const RootCertificate& c) {
    ordered_json j;
    j["polynomial"] = c.polynomial;
    j["lower"] = c.lower.get_str();
    j["upper"] = c.upper.get_str();
    j["lower_decimal"] = c.lower.get_d();
    j["upper_decimal"] = c.upper.get_d();
    j["sign_lower"] = c.sign_lower;
    j["sign_upper"] = c.sign_upper;
    j["width"] = c.width;
    return j;
}

void finish_report(const std::string& path, ordered_json& doc, RunManifest& manifest,
                   const WallTimer& timer) {
    if (path.empty()) return;
    manifest.wall_seconds = timer.seconds();
    doc["manifest"] = manifest_json(manifest);
    write_report(path, doc);
}

struct SearchOpts {
    int n = 6;
    int restarts = 20;
    int iters = 5000;
    std::uint64_t seed = 1;
    double variance_max = 0.1;
    int variance_retries = 600;
    double squeeze = 0.98;
    double polish_tol = 1e-9;
    std::string out, report;
};

SearchParams to_params(const SearchOpts& o) {
    SearchParams p;
    p.n = o.n;
    p.restarts = o.restarts;
    p.iterations = o.iters;
    p.seed = o.seed;
    p.variance_max = o.variance_max;
    p.variance_retries = o.variance_retries;
    p.squeeze = o.squeeze;
    p.polish_tol = o.polish_tol;
    return p;
}

ordered_json search_result_json(const SearchResult& res, int n) {
    ordered_json j;
    j["n"] = n;
    j["quality"] = res.quality;
    j["valency"] = res.valency;
    j["seed"] = res.seed;
    const NamedConstant& ref = reference_for_n(n);
    j["reference"] = {{"name", ref.name}, {"value", ref.value},
                      {"abs_diff", std::fabs(res.quality - ref.value)}};
    j["points"] = json_points(res.best);
    ordered_json restarts = ordered_json::array();
    for (const RestartSummary& r : res.restarts)
        restarts.push_back({{"index", r.index},
                            {"quality", r.quality},
                            {"accepted", r.accepted},
                            {"rejected", r.rejected},
                            {"valid", r.valid}});
    j["restarts"] = restarts;
    ordered_json trace = ordered_json::array();
    for (const TracePoint& t : res.trace)
        trace.push_back({{"iteration", t.iteration}, {"quality", t.quality}});
    j["trace"] = trace;
    return j;
}

int cmd_search(const SearchOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "search";
    manifest.parameters = {{"n", o.n},
                           {"restarts", o.restarts},
                           {"iters", o.iters},
                           {"seed", o.seed},
                           {"variance_max", o.variance_max},
                           {"variance_retries", o.variance_retries},
                           {"squeeze", o.squeeze},
                           {"polish_tol", o.polish_tol},
                           {"out", o.out},
                           {"report", o.report}};

    SearchResult res = search(to_params(o));
    res.best.label = "search-n" + std::to_string(o.n) + "-seed" + std::to_string(o.seed);
    ordered_json doc = search_result_json(res, o.n);
    doc["wall_seconds"] = res.wall_seconds;

    if (!o.out.empty()) {
        write_off_file(o.out, convex_hull(res.best));
        manifest.outputs[o.out] = file_hash(o.out);
    }
    const NamedConstant& ref = reference_for_n(o.n);
    std::printf("n=%d  best Q=%.12f  reference %s=%.12f  |diff|=%.3e\n", o.n, res.quality,
                ref.name.c_str(), ref.value, std::fabs(res.quality - ref.value));
    std::printf("valency %s\n", valency_string(res.valency).c_str());
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct EvalOpts {
    std::string target, report;
};

int cmd_eval(const EvalOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "eval";
    manifest.parameters = {{"target", o.target}, {"report", o.report}};

    Configuration c = resolve_config(o.target, manifest);
    HullMesh m = convex_hull(c);
    double v3 = volume(m), a3 = surface_area(m), q = quality(m);
    ValencyVector val = valency_vector(m);
    double diam = diameter(c.points).value;
    bool tri = all_faces_triangular(m);

    std::printf("vertices: %zu\n", m.vertices.size());
    std::printf("V3: %.17g\n", v3);
    std::printf("A3: %.17g\n", a3);
    std::printf("Q: %.17g\n", q);
    std::printf("valency: %s\n", valency_string(val).c_str());
    std::printf("diameter: %.17g\n", diam);
    std::printf("triangle_faces: %s\n", tri ? "yes" : "no");

    ordered_json doc;
    doc["target"] = o.target;
    doc["vertices"] = m.vertices.size();
    doc["V3"] = v3;
    doc["A3"] = a3;
    doc["Q"] = q;
    doc["valency"] = val;
    doc["diameter"] = diam;
    doc["triangle_faces"] = tri;
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct FamilyOpts {
    std::string name;
    int n = 0;
    std::string out, report;
};

int cmd_family(const FamilyOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "family";
    manifest.parameters = {{"name", o.name}, {"n", o.n}, {"out", o.out}, {"report", o.report}};

    const ShapeFamily& fam = o.name.empty() ? family_for_n(o.n) : family_by_name(o.name);
    FamilyOptimum best = optimize_family(fam);
    Configuration c = instantiate(fam, best.params);
    double q_mesh = quality(convex_hull(c));

    std::printf("family %s (n=%d)\n", fam.name.c_str(), fam.n);
    for (std::size_t i = 0; i < best.params.size(); ++i)
        std::printf("  %s = %.12f\n", fam.param_names[i].c_str(), best.params[i]);
    std::printf("quality: %.12f  (mesh %.12f, gradient norm %.3e, %d evaluations)\n",
                best.quality, q_mesh, best.gradient_norm, best.evaluations);

    ordered_json doc;
    doc["family"] = fam.name;
    doc["n"] = fam.n;
    ordered_json params = ordered_json::object();
    for (std::size_t i = 0; i < best.params.size(); ++i)
        params[fam.param_names[i]] = best.params[i];
    doc["params"] = params;
    doc["quality"] = best.quality;
    doc["mesh_quality"] = q_mesh;
    doc["gradient_norm"] = best.gradient_norm;
    doc["evaluations"] = best.evaluations;
    const NamedConstant& ref = reference_for_n(fam.n);
    doc["reference"] = {{"name", ref.name}, {"value", ref.value},
                        {"abs_diff", std::fabs(best.quality - ref.value)}};
    doc["points"] = json_points(c);
    if (!o.out.empty()) {
        write_off_file(o.out, convex_hull(c));
        manifest.outputs[o.out] = file_hash(o.out);
    }
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct VerifyOpts {
    int n = 8;
    double tol = 1e-6;
    double param_tol = 1e-3;
    double value = 0;  // optional quality override; 0 means use the family optimum
    std::string report;
};

int cmd_verify(const VerifyOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "verify";
    manifest.parameters = {{"n", o.n},
                           {"tol", o.tol},
                           {"param_tol", o.param_tol},
                           {"value", o.value},
                           {"report", o.report}};

    ordered_json certs = ordered_json::array();
    std::string q6_id = "n" + std::to_string(o.n) + "_q6";
    FamilyOptimum best = optimize_family(family_for_n(o.n));
    double q = o.value > 0 ? o.value : best.quality;
    double q6 = std::pow(q, 6);

    RootCertificate cq = verify_minpoly(polynomial_by_id(q6_id), q6, o.tol * q6);
    ordered_json jq = certificate_json(cq);
    jq["estimate"] = q6;
    jq["quantity"] = "Q^6";
    certs.push_back(jq);

    if (o.value == 0) {
        auto add = [&](const std::string& id, const std::string& quantity, double est) {
            RootCertificate c = verify_minpoly(polynomial_by_id(id), est, o.param_tol);
            ordered_json j = certificate_json(c);
            j["estimate"] = est;
            j["quantity"] = quantity;
            certs.push_back(j);
        };
        if (o.n == 8) {
            add("n8_w", "w", best.params[0]);
            add("n8_x2", "x^2", best.params[1] * best.params[1]);
            add("n8_z2", "z^2", best.params[2] * best.params[2]);
        } else if (o.n == 9) {
            add("n9_b2", "b^2", best.params[0] * best.params[0]);
            add("n9_h2", "h^2", best.params[1] * best.params[1]);
        } else {
            add("n10_h2", "h^2", best.params[0] * best.params[0]);
            add("n10_z2", "z^2", best.params[1] * best.params[1]);
        }
    }

    for (const auto& c : certs)
        std::printf("certified %-6s against %-7s width %.3e signs (%+d,%+d)\n",
                    c["quantity"].get<std::string>().c_str(),
                    c["polynomial"].get<std::string>().c_str(), c["width"].get<double>(),
                    c["sign_lower"].get<int>(), c["sign_upper"].get<int>());
    std::printf("quality: %.12f (Q^6 = %.12f)\n", q, q6);

    ordered_json doc;
    doc["n"] = o.n;
    doc["quality"] = q;
    doc["q6"] = q6;
    doc["certificates"] = certs;
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct ProbeOpts {
    std::string base, mode, report;
    double level = 0;
    long trials = 10000;
    std::uint64_t seed = 1;
    double radius = 0.05;
    int vertex = -1;
    bool gauge = false;
};

int cmd_probe(const ProbeOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "probe";
    manifest.parameters = {{"base", o.base},   {"mode", o.mode},     {"level", o.level},
                           {"trials", o.trials}, {"seed", o.seed},   {"radius", o.radius},
                           {"vertex", o.vertex}, {"gauge", o.gauge}, {"report", o.report}};

    Configuration base = resolve_config(o.base, manifest);
    ordered_json doc;
    doc["base"] = o.base;
    doc["mode"] = o.mode;

    if (o.mode == "singular" || o.mode == "gradient") {
        auto cands = singular_candidates(base, o.level);
        double worst = 0;
        ordered_json rows = ordered_json::array();
        for (const auto& r : cands) {
            ordered_json j;
            j["candidate"] = json_vec3(r.candidate);
            j["edge"] = r.edge;
            j["level_residual"] = r.level_residual;
            j["adjacent_cells"] = r.normals.size();
            j["max_angle"] = r.max_angle;
            if (o.mode == "gradient") {
                ordered_json normals = ordered_json::array();
                for (const Vec3& g : r.normals) normals.push_back(json_vec3(g));
                j["gradients"] = normals;
            }
            rows.push_back(j);
            worst = std::max(worst, r.level_residual);
        }
        doc["level"] = o.level;
        doc["candidates"] = rows;
        std::printf("%zu singular candidates at level %.12g, worst residual %.3e\n",
                    cands.size(), o.level, worst);
    } else if (o.mode == "convexity") {
        Rng rng(o.seed);
        ConvexityReport rep = convexity_sample(base, o.level, o.trials, rng);
        doc["level"] = o.level;
        doc["trials"] = rep.trials;
        doc["violations"] = rep.violations;
        doc["min_strict_gap"] = rep.min_strict_gap;
        std::printf("convexity: %ld trials, %ld violations, min strict gap %.3e\n", rep.trials,
                    rep.violations, rep.min_strict_gap);
    } else {  // rigidity
        Rng rng(o.seed);
        if (o.gauge) {
            bool ok = rigidity_probe_gauge(base, o.radius, o.trials, rng);
            doc["gauge"] = true;
            doc["rigid"] = ok;
            std::printf("gauge rigidity: %s\n", ok ? "true" : "false");
        } else {
            std::vector<int> targets;
            if (o.vertex >= 0)
                targets.push_back(o.vertex);
            else
                for (std::size_t i = 0; i < base.size(); ++i) targets.push_back(static_cast<int>(i));
            ordered_json rows = ordered_json::array();
            bool all = true;
            for (int v : targets) {
                bool ok = rigidity_probe(base, v, o.radius, o.trials, rng);
                rows.push_back({{"vertex", v}, {"rigid", ok}});
                all = all && ok;
                std::printf("vertex %d: %s\n", v, ok ? "rigid" : "NOT rigid");
            }
            doc["radius"] = o.radius;
            doc["trials_per_vertex"] = o.trials;
            doc["vertices"] = rows;
            doc["rigid"] = all;
        }
    }
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct ExportOpts {
    std::string shape, format = "off", out, report;
};

int cmd_export(const ExportOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "export";
    manifest.parameters = {{"shape", o.shape}, {"format", o.format}, {"out", o.out},
                           {"report", o.report}};

    Configuration c = resolve_config(o.shape, manifest);
    if (o.format == "off") {
        write_off_file(o.out, convex_hull(c));
    } else {
        ordered_json j;
        j["label"] = c.label;
        j["points"] = json_points(c);
        write_report(o.out, j);
    }
    manifest.outputs[o.out] = file_hash(o.out);
    std::printf("wrote %s (%zu points, %s)\n", o.out.c_str(), c.size(), o.format.c_str());

    ordered_json doc;
    doc["shape"] = o.shape;
    doc["format"] = o.format;
    doc["out"] = o.out;
    doc["points"] = c.size();
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

struct TableOpts {
    int restarts = 20;
    int iters = 5000;
    std::uint64_t seed = 1;
    double variance_max = 0.1;
    int variance_retries = 600;
    double certify_tol = 1e-6;
    std::string report;
};

int cmd_table(const TableOpts& o) {
    WallTimer timer;
    RunManifest manifest;
    manifest.command = "table";
    manifest.parameters = {{"restarts", o.restarts},
                           {"iters", o.iters},
                           {"seed", o.seed},
                           {"variance_max", o.variance_max},
                           {"variance_retries", o.variance_retries},
                           {"certify_tol", o.certify_tol},
                           {"report", o.report}};

    ordered_json rows = ordered_json::array();
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true, above_ball = true;
    std::printf(" n   best Q         reference      |diff|     certified  valency\n");
    for (int n = 4; n <= 12; ++n) {
        SearchParams p;
        p.n = n;
        p.restarts = o.restarts;
        p.iterations = o.iters;
        p.seed = o.seed + static_cast<std::uint64_t>(n);
        p.variance_max = o.variance_max;
        p.variance_retries = o.variance_retries;
        SearchResult res = search(p);

        bool certified = false;
        if (n == 8 || n == 9 || n == 10) {
            try {
                certify_eta(n, o.certify_tol);
                certified = true;
            } catch (const NoSignChange&) {
            }
        }
        const NamedConstant& ref = reference_for_n(n);
        double diff = std::fabs(res.quality - ref.value);
        monotone = monotone && res.quality < prev;
        above_ball = above_ball && res.quality > ball_limit();
        prev = res.quality;
        std::printf("%2d   %.10f   %12.10g   %.3e   %-9s  %s\n", n, res.quality, ref.value, diff,
                    certified ? "yes" : "no", valency_string(res.valency).c_str());
        rows.push_back({{"n", n},
                        {"quality", res.quality},
                        {"reference", ref.value},
                        {"reference_name", ref.name},
                        {"abs_diff", diff},
                        {"valency", res.valency},
                        {"certified", certified}});
    }
    std::printf("strictly decreasing: %s   all above ball limit %.5f: %s\n",
                monotone ? "yes" : "no", ball_limit(), above_ball ? "yes" : "no");

    ordered_json doc;
    doc["rows"] = rows;
    doc["strictly_decreasing"] = monotone;
    doc["above_ball_limit"] = above_ball;
    doc["ball_limit"] = ball_limit();
    finish_report(o.report, doc, manifest, timer);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polymin: search, evaluate, and certify minimum-area polyhedra"};
    app.require_subcommand(1);

    SearchOpts so;
    CLI::App* s = app.add_subcommand("search", "randomized search for the best n-vertex shape");
    s->add_option("--n", so.n, "vertex count")->required()->check(CLI::Range(4, 64));
    s->add_option("--restarts", so.restarts)->check(CLI::PositiveNumber);
    s->add_option("--iters", so.iters)->check(CLI::PositiveNumber);
    s->add_option("--seed", so.seed);
    s->add_option("--variance-max", so.variance_max);
    s->add_option("--variance-retries", so.variance_retries);
    s->add_option("--squeeze", so.squeeze)->check(CLI::Range(0.5, 1.0));
    s->add_option("--polish-tol", so.polish_tol);
    s->add_option("--out", so.out, "OFF file for the winning hull");
    s->add_option("--report", so.report, "JSON report path");

    EvalOpts eo;
    CLI::App* e = app.add_subcommand("eval", "evaluate a mesh file or builtin shape");
    e->add_option("target", eo.target, "OFF path or builtin:<name>")->required();
    e->add_option("--report", eo.report);

    FamilyOpts fo;
    CLI::App* f = app.add_subcommand("family", "optimize a parametric candidate family");
    f->add_option("--name", fo.name, "family name");
    f->add_option("--n", fo.n, "pick the family by vertex count")->check(CLI::Range(4, 12));
    f->add_option("--out", fo.out, "OFF file for the optimal shape");
    f->add_option("--report", fo.report);

    VerifyOpts vo;
    CLI::App* v = app.add_subcommand("verify", "exact root certificates for the optimal quality");
    v->add_option("--n", vo.n, "vertex count with reference polynomials")
        ->required()
        ->check(CLI::IsMember({8, 9, 10}));
    v->add_option("--tol", vo.tol, "relative tolerance on Q^6")->check(CLI::PositiveNumber);
    v->add_option("--param-tol", vo.param_tol, "absolute tolerance on parameters")
        ->check(CLI::PositiveNumber);
    v->add_option("--value", vo.value, "certify this quality instead of the family optimum");
    v->add_option("--report", vo.report);

    ProbeOpts po;
    CLI::App* p = app.add_subcommand("probe", "level-set and rigidity probes");
    p->add_option("--base", po.base, "OFF path or builtin:<name>")->required();
    p->add_option("--mode", po.mode)
        ->required()
        ->check(CLI::IsMember({"singular", "convexity", "gradient", "rigidity"}));
    p->add_option("--level", po.level, "patch-area level (twice the plain area)");
    p->add_option("--trials", po.trials)->check(CLI::PositiveNumber);
    p->add_option("--seed", po.seed);
    p->add_option("--radius", po.radius, "perturbation radius (rigidity)");
    p->add_option("--vertex", po.vertex, "single vertex to probe; -1 for all");
    p->add_flag("--gauge", po.gauge, "perturb all vertices, compare modulo similitude");
    p->add_option("--report", po.report);

    ExportOpts xo;
    CLI::App* x = app.add_subcommand("export", "write a shape as OFF or a JSON point list");
    x->add_option("--shape", xo.shape, "OFF path or builtin:<name>")->required();
    x->add_option("--format", xo.format)->check(CLI::IsMember({"off", "json"}));
    x->add_option("--out", xo.out)->required();
    x->add_option("--report", xo.report);

    TableOpts to;
    CLI::App* t = app.add_subcommand("table", "search n = 4..12 and compare with references");
    t->add_option("--restarts", to.restarts)->check(CLI::PositiveNumber);
    t->add_option("--iters", to.iters)->check(CLI::PositiveNumber);
    t->add_option("--seed", to.seed);
    t->add_option("--variance-max", to.variance_max);
    t->add_option("--variance-retries", to.variance_retries);
    t->add_option("--certify-tol", to.certify_tol)->check(CLI::PositiveNumber);
    t->add_option("--report", to.report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (s->parsed()) return cmd_search(so);
        if (e->parsed()) return cmd_eval(eo);
        if (f->parsed()) return cmd_family(fo);
        if (v->parsed()) return cmd_verify(vo);
        if (p->parsed()) return cmd_probe(po);
        if (x->parsed()) return cmd_export(xo);
        if (t->parsed()) return cmd_table(to);
    } catch (const NoSignChange& err) {
        std::fprintf(stderr, "certification failure: %s\n", err.what());
        return 4;
    } catch (const DegenerateInput& err) {
        std::fprintf(stderr, "degenerate input: %s\n", err.what());
        return 3;
    } catch (const OffParseError& err) {
        std::fprintf(stderr, "bad mesh file: %s\n", err.what());
        return 3;
    } catch (const BudgetExhausted& err) {
        std::fprintf(stderr, "search failed: %s\n", err.what());
        return 3;
    } catch (const std::out_of_range& err) {
        std::fprintf(stderr, "unknown name: %s\n", err.what());
        return 2;
    }
    return 0;
}
