#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json_io.hpp"
#include "picklab/agler_np.hpp"
#include "picklab/ball_np.hpp"
#include "picklab/cp_toolkit.hpp"
#include "picklab/disk_np.hpp"
#include "picklab/necessity.hpp"
#include "picklab/oracle.hpp"
#include "picklab/quiver_np.hpp"
#include "schema.hpp"

namespace picklab::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Request {
    std::string setting;
    json payload;
    json options;
    std::string raw;
};

struct Resolved {
    Tolerance tol;
    SeriesOptions series;
    AglerOptions agler;
    bool literal = false;
    std::uint64_t seed = 1;
};

const std::map<std::string, std::string>& aliases()
{
    static const std::map<std::string, std::string> a = {
        {"ball.fov", "ball.da_fov"},       {"ball.lt", "ball.da_lt"},          {"ball.ltoa", "ball.nc_ltoa"},
        {"ball.frd", "ball.nc_frd"},       {"ball.frd_star", "ball.nc_frd_star"},
    };
    return a;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json provenance(const std::string& bytes)
{
    return {{"input_hash", "fnv1a64:" + hash_hex(fnv1a64(bytes))}, {"tool", kToolName}};
}

Request load_request(const std::string& path)
{
    Request r;
    r.raw = read_file(path);
    json doc;
    try {
        doc = json::parse(r.raw);
    } catch (const json::parse_error& e) {
        throw DataError("", std::string("malformed JSON: ") + e.what());
    }
    if (auto issue = validate(doc, embedded_schema("request"))) throw DataError(issue->path, issue->message);
    r.setting = canonical_setting(doc["setting"].get<std::string>());
    if (r.setting.empty()) throw UsageError("unknown setting '" + doc["setting"].get<std::string>() + "'");
    r.payload = doc["payload"];
    r.options = doc.value("options", json::object());
    if (auto issue = validate(r.payload, embedded_schema("payloads"), "#/$defs/" + r.setting))
        throw DataError("/payload" + issue->path, issue->message);
    return r;
}

Tolerance parse_tol(const json& t)
{
    if (t.is_string()) {
        if (t.get<std::string>() == "auto") return Tolerance::auto_scaled();
        throw UsageError("--tol must be 'auto' or a non-negative number");
    }
    return Tolerance::fixed(t.get<double>());
}

// PICKLAB_BUDGET replaces the work cap of truncated series and the dense Agler budget.
void set_budget_from_env(SeriesOptions& s)
{
    if (const char* b = std::getenv("PICKLAB_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(b, &end, 10);
        if (end == b || *end != '\0' || v == 0) throw UsageError("PICKLAB_BUDGET must be a positive integer");
        s.budget = static_cast<std::size_t>(v);
    }
}

Resolved resolve(const json& options, const Flags& f)
{
    Resolved r;
    if (options.contains("tol")) r.tol = parse_tol(options["tol"]);
    if (f.tol) {
        if (*f.tol == "auto") {
            r.tol = Tolerance::auto_scaled();
        } else {
            try {
                std::size_t used = 0;
                const double v = std::stod(*f.tol, &used);
                if (used != f.tol->size() || !(v >= 0.0)) throw std::invalid_argument("tol");
                r.tol = Tolerance::fixed(v);
            } catch (const std::exception&) {
                throw UsageError("--tol must be 'auto' or a non-negative number");
            }
        }
    }
    if (options.contains("max_level")) r.series.max_level = options["max_level"].get<int>();
    if (f.max_level) r.series.max_level = *f.max_level;
    if (options.contains("max_iter")) r.agler.max_iter = options["max_iter"].get<int>();
    if (f.max_iter) r.agler.max_iter = *f.max_iter;
    if (options.contains("seed")) r.seed = options["seed"].get<std::uint64_t>();
    if (f.seed) r.seed = *f.seed;
    r.literal = options.value("literal_unweighted", false) || f.literal_unweighted;
    if (!r.tol.automatic) r.agler.tol = r.tol.value > 0.0 ? r.tol.value : r.agler.tol;
    if (std::getenv("PICKLAB_BUDGET")) {
        set_budget_from_env(r.series);
        r.agler.budget = r.series.budget;
    }
    return r;
}

json base_doc(const char* command, const std::string& setting, const std::string& raw)
{
    json d;
    d["schema_version"] = "1";
    d["command"] = command;
    if (!setting.empty()) d["setting"] = setting;
    d["provenance"] = provenance(raw);
    return d;
}

void put_report(json& d, const FeasibilityReport& r)
{
    d["verdict"] = r.verdict.is_psd ? "feasible" : "infeasible";
    d["min_eigenvalue"] = r.verdict.min_eigenvalue;
    d["tolerance"] = r.verdict.tolerance_used;
    d["tail_bound"] = r.tail_bound;
    d["method"] = method_name(r.method);
    d["levels"] = r.levels;
    d["block_sizes"] = r.block_sizes;
    d["pick_matrix"] = to_json(r.pick);
}

int verdict_code(const json& d)
{
    const std::string v = d["verdict"].get<std::string>();
    if (v == "feasible" || v == "feasible_with_certificate" || v == "cp" || v == "passed" || v == "ok") return kExitFeasible;
    if (v == "unknown") return kExitUnknown;
    return kExitInfeasible;
}

// ---------------------------------------------------------------------------
// Payload decoding per setting

const json& at(const json& p, const char* key)
{
    return p[key];
}

std::string ptr(const char* key)
{
    return std::string("/payload/") + key;
}

std::vector<Mat> mats(const json& p, const char* key)
{
    return parse_matrices(at(p, key), ptr(key));
}

QlttData qltt_data(const json& p)
{
    QlttData d;
    d.g = parse_quiver(at(p, "quiver"), ptr("quiver"));
    d.zdims = parse_dims(at(p, "zdims"), d.g, ptr("zdims"));
    d.ydims = parse_dims(at(p, "ydims"), d.g, ptr("ydims"));
    d.udims = parse_dims(at(p, "udims"), d.g, ptr("udims"));
    d.z = parse_quiver_points(at(p, "z"), d.g, d.zdims, PointKind::tensor, ptr("z"));
    d.x = mats(p, "x");
    d.y = mats(p, "y");
    return d;
}

AglerProblem agler_problem(const std::string& setting, const json& p)
{
    AglerProblem a;
    if (setting == "polydisk.agler_scalar") {
        a.variant = AglerVariant::scalar_points;
        a.lambda = parse_points(at(p, "lambda"), ptr("lambda"));
        a.f = parse_complexes(at(p, "f"), ptr("f"));
        a.d = static_cast<int>(a.lambda.front().size());
    } else if (setting == "polydisk.agler_ltoa") {
        a.variant = AglerVariant::nc_ltoa;
        a.t = parse_tuples(at(p, "t"), ptr("t"));
        a.x = mats(p, "x");
        a.y = mats(p, "y");
        a.d = a.t.front().d();
    } else {
        a.variant = AglerVariant::nc_rd;
        a.z = parse_tuples(at(p, "z"), ptr("z"));
        a.w = mats(p, "w");
        a.kappa = at(p, "kappa").get<int>();
        a.d = a.z.front().d();
    }
    return a;
}

json agler_doc(json d, const AglerReport& r)
{
    d["verdict"] = agler_status_name(r.status);
    d["gap_estimate"] = r.gap_estimate;
    d["iterations"] = r.iterations;
    d["affine_residual"] = r.affine_residual;
    if (r.certificate) {
        json c;
        c["kernels"] = to_json(r.certificate->kernels);
        c["residual_norm"] = r.certificate->residual_norm;
        c["iterations"] = r.certificate->iterations;
        json me = json::array();
        for (const auto& k : r.certificate->kernels) me.push_back(k.size() ? min_eigenvalue(k) : 0.0);
        c["min_eigenvalues"] = me;
        d["certificate"] = c;
    }
    return d;
}

using CheckFn = std::function<void(json& doc, const json& payload, const Resolved& r)>;

const std::map<std::string, CheckFn>& check_table()
{
    static const std::map<std::string, CheckFn> t = {
        {"disk.fov", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_fov(parse_complexes(at(p, "lambda"), ptr("lambda")), mats(p, "w"), r.tol));
         }},
        {"disk.lt", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_lt(parse_complexes(at(p, "lambda"), ptr("lambda")), mats(p, "x"), mats(p, "y"), r.tol));
         }},
        {"disk.rt", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_rt(parse_complexes(at(p, "lambda"), ptr("lambda")), mats(p, "u"), mats(p, "v"), r.tol));
         }},
        {"disk.ltoa", [](json& d, const json& p, const Resolved& r) { put_report(d, pick_ltoa(mats(p, "t"), mats(p, "x"), mats(p, "y"), r.tol)); }},
        {"disk.rtoa", [](json& d, const json& p, const Resolved& r) { put_report(d, pick_rtoa(mats(p, "a"), mats(p, "u"), mats(p, "v"), r.tol)); }},
        {"disk.frd", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_frd(mats(p, "z"), mats(p, "w"), at(p, "kappa").get<int>(), r.tol));
         }},
        {"disk.ltrd", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_ltrd(mats(p, "z"), mats(p, "x"), mats(p, "y"), at(p, "kappa").get<int>(), r.tol));
         }},
        {"disk.rtrd", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_rtrd(mats(p, "z"), mats(p, "u"), mats(p, "v"), at(p, "kappa").get<int>(), r.tol));
         }},
        {"disk.nevanlinna_rd", [](json& d, const json& p, const Resolved& r) {
             put_report(d, nevanlinna_rd_check(parse_matrix(at(p, "z"), ptr("z")), parse_matrix(at(p, "w"), ptr("w")),
                                               at(p, "kappa").get<int>(), r.tol));
         }},
        {"ball.da_fov", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_da_fov(parse_points(at(p, "lambda"), ptr("lambda")), mats(p, "w"), r.tol));
         }},
        {"ball.da_lt", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_da_lt(parse_points(at(p, "lambda"), ptr("lambda")), mats(p, "x"), mats(p, "y"), r.tol));
         }},
        {"ball.da_ltoa", [](json& d, const json& p, const Resolved& r) {
             BallOptions bo;
             bo.series = r.series;
             bo.literal_unweighted = r.literal;
             put_report(d, pick_da_ltoa(parse_tuples(at(p, "z"), ptr("z")), mats(p, "x"), mats(p, "y"), bo, r.tol));
         }},
        {"ball.nc_ltoa", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_nc_ltoa(parse_tuples(at(p, "z"), ptr("z")), mats(p, "x"), mats(p, "y"), r.series, r.tol));
         }},
        {"ball.nc_frd", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_nc_frd(parse_tuples(at(p, "z"), ptr("z")), mats(p, "w"), at(p, "kappa").get<int>(), r.series, r.tol));
         }},
        {"ball.nc_frd_star", [](json& d, const json& p, const Resolved& r) {
             put_report(d, pick_nc_frd_star(parse_tuples(at(p, "z"), ptr("z")), mats(p, "w"), at(p, "kappa").get<int>(), r.series,
                                            r.tol));
         }},
        {"quiver.qltt", [](json& d, const json& p, const Resolved& r) {
             const QlttData q = qltt_data(p);
             const QlttReport rep = pick_qltt(q, r.series, r.tol);
             d["verdict"] = rep.feasible ? "feasible" : "infeasible";
             d["tail_bound"] = rep.tail_bound;
             d["levels"] = rep.levels;
             d["method"] = method_name(PickMethod::truncated_series);
             double me = std::numeric_limits<double>::infinity();
             json vs = json::array();
             for (std::size_t v = 0; v < rep.per_vertex.size(); ++v) {
                 json e{{"vertex", q.g.vertices[v]}, {"present", static_cast<bool>(rep.vertex_present[v])}};
                 if (rep.vertex_present[v]) {
                     const FeasibilityReport& fr = rep.per_vertex[v];
                     e["min_eigenvalue"] = fr.verdict.min_eigenvalue;
                     e["tolerance"] = fr.verdict.tolerance_used;
                     e["tail_bound"] = fr.tail_bound;
                     e["pick_matrix"] = to_json(fr.pick);
                     me = std::min(me, fr.verdict.min_eigenvalue);
                 }
                 vs.push_back(e);
             }
             d["min_eigenvalue"] = std::isfinite(me) ? me : 0.0;
             d["vertices"] = vs;
         }},
        {"quiver.qltrd", [](json& d, const json& p, const Resolved& r) {
             QltrdData q;
             q.g = parse_quiver(at(p, "quiver"), ptr("quiver"));
             q.zdims = parse_dims(at(p, "zdims"), q.g, ptr("zdims"));
             q.z = parse_quiver_points(at(p, "z"), q.g, q.zdims, PointKind::tensor, ptr("z"));
             q.x = mats(p, "x");
             q.y = mats(p, "y");
             q.kappa = at(p, "kappa").get<int>();
             put_report(d, pick_qltrd(q, r.series, r.tol));
         }},
        {"quiver.qltoa", [](json& d, const json& p, const Resolved& r) {
             QltoaData q;
             q.g = parse_quiver(at(p, "quiver"), ptr("quiver"));
             q.xdims = parse_dims(at(p, "xdims"), q.g, ptr("xdims"));
             q.ydims = parse_dims(at(p, "ydims"), q.g, ptr("ydims"));
             q.udims = parse_dims(at(p, "udims"), q.g, ptr("udims"));
             q.t = parse_quiver_points(at(p, "t"), q.g, q.xdims, PointKind::operator_argument, ptr("t"));
             q.x = mats(p, "x");
             q.y = mats(p, "y");
             put_report(d, pick_qltoa(q, r.series, r.tol));
         }},
        {"quiver.const_mult", [](json& d, const json& p, const Resolved& r) {
             const ConstMultResult c = constant_multiplier_check(mats(p, "x"), mats(p, "y"), at(p, "kappa").get<int>(), r.tol);
             put_report(d, c.xy);
             d["rank_one_form"] = to_json(c.rank_one_form);
             if (c.delta) d["delta"] = to_json(*c.delta);
         }},
    };
    return t;
}

bool is_polydisk(const std::string& s)
{
    return s.rfind("polydisk.", 0) == 0;
}

bool is_cp(const std::string& s)
{
    return s.rfind("cp.", 0) == 0;
}

double elapsed_ms(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs body and maps exceptions onto the exit-code contract.
Outcome guarded(const std::function<Outcome()>& body, const char* command, const std::string& setting,
                const std::string& raw)
{
    try {
        return body();
    } catch (const UsageError& e) {
        return error_outcome(kExitUsage, "usage", e.what(), "");
    } catch (const DataError& e) {
        return error_outcome(kExitData, "data", e.what(), e.path());
    } catch (const BudgetError& e) {
        json d;
        d["schema_version"] = "1";
        d["command"] = command;
        if (!setting.empty()) d["setting"] = setting;
        d["verdict"] = "unknown";
        d["reason"] = e.what();
        d["achieved_tail_bound"] = e.achieved_bound();
        d["provenance"] = provenance(raw);
        return {kExitUnknown, d};
    } catch (const Error& e) {
        return error_outcome(kExitData, errc_name(e.code()), e.what(), "/payload");
    } catch (const json::exception& e) {
        return error_outcome(kExitData, "data", e.what(), "/payload");
    }
}

LinearMapOnMatrices build_map(const std::string& setting, const json& p)
{
    if (setting == "cp.explicit") {
        LinearMapOnMatrices m{at(p, "n").get<Eigen::Index>(), at(p, "m").get<Eigen::Index>(), mats(p, "images")};
        m.validate();
        return m;
    }
    if (setting == "cp.identity") return identity_map(at(p, "n").get<Eigen::Index>());
    if (setting == "cp.transpose") return transpose_map(at(p, "n").get<Eigen::Index>());
    if (setting == "cp.conjugation") return conjugation_map(parse_matrix(at(p, "v"), ptr("v")));
    if (setting == "cp.phi_disk") return build_phi_disk(mats(p, "z"), mats(p, "x"), mats(p, "y"));
    if (setting == "cp.phi_star_disk") return build_phi_star_disk(mats(p, "z"), mats(p, "x"), mats(p, "y"));
    if (setting == "cp.phi_bar_quiver") return build_phi_bar_quiver(qltt_data(p));
    const Quiver g = parse_quiver(at(p, "quiver"), ptr("quiver"));
    return conditional_expectation(parse_dims(at(p, "zdims"), g, ptr("zdims")), at(p, "nodes").get<std::size_t>());
}

}  // namespace

std::string canonical_setting(const std::string& s)
{
    auto a = aliases().find(s);
    const std::string name = a == aliases().end() ? s : a->second;
    if (check_table().count(name)) return name;
    if (name == "polydisk.agler_scalar" || name == "polydisk.agler_ltoa" || name == "polydisk.agler_rd") return name;
    static const char* cp[] = {"cp.explicit", "cp.identity", "cp.transpose", "cp.conjugation", "cp.phi_disk",
                               "cp.phi_star_disk", "cp.phi_bar_quiver", "cp.conditional_expectation"};
    for (const char* c : cp)
        if (name == c) return name;
    return {};
}

std::string render(const nlohmann::json& doc)
{
    return doc.dump(2) + "\n";
}

Outcome error_outcome(int exit_code, const std::string& code, const std::string& message, const std::string& path)
{
    return {exit_code, {{"error", {{"code", code}, {"message", message}, {"path", path}}}}};
}

Outcome cmd_check(const std::string& input_path, const Flags& flags)
{
    const auto t0 = Clock::now();
    std::string setting, raw;
    return guarded(
        [&] {
            const Request req = load_request(input_path);
            setting = req.setting;
            raw = req.raw;
            const Resolved r = resolve(req.options, flags);
            json d = base_doc("check", req.setting, req.raw);
            if (is_polydisk(req.setting)) {
                d = agler_doc(d, solve_feasibility(agler_problem(req.setting, req.payload), r.agler));
            } else if (is_cp(req.setting)) {
                throw UsageError("cp settings are handled by the choi and cpcheck commands");
            } else {
                check_table().at(req.setting)(d, req.payload, r);
            }
            d["timings"] = {{"total_ms", elapsed_ms(t0)}};
            return Outcome{verdict_code(d), d};
        },
        "check", setting, raw);
}

Outcome cmd_agler(const std::string& input_path, const Flags& flags)
{
    const auto t0 = Clock::now();
    std::string setting, raw;
    return guarded(
        [&] {
            const Request req = load_request(input_path);
            setting = req.setting;
            raw = req.raw;
            if (!is_polydisk(req.setting)) throw UsageError("agler expects a polydisk.* setting, got '" + req.setting + "'");
            const Resolved r = resolve(req.options, flags);
            const AglerProblem prob = agler_problem(req.setting, req.payload);
            const AglerReport rep = solve_feasibility(prob, r.agler);
            json d = agler_doc(base_doc("agler", req.setting, req.raw), rep);
            if (flags.emit_certificate) {
                if (!rep.certificate) {
                    d["certificate_path"] = nullptr;
                } else {
                    json c;
                    c["schema_version"] = "1";
                    c["setting"] = req.setting;
                    c["kernels"] = to_json(rep.certificate->kernels);
                    c["block_sizes"] = build_system(prob).block;
                    c["residual_norm"] = rep.certificate->residual_norm;
                    c["iterations"] = rep.certificate->iterations;
                    c["min_eigenvalues"] = d["certificate"]["min_eigenvalues"];
                    std::ofstream out(*flags.emit_certificate, std::ios::binary);
                    if (!out) throw DataError("", "cannot write '" + *flags.emit_certificate + "'");
                    out << render(c);
                    d["certificate_path"] = *flags.emit_certificate;
                }
            }
            d["timings"] = {{"total_ms", elapsed_ms(t0)}};
            return Outcome{verdict_code(d), d};
        },
        "agler", setting, raw);
}

Outcome cmd_choi(const std::string& input_path, const Flags&)
{
    const auto t0 = Clock::now();
    std::string setting, raw;
    return guarded(
        [&] {
            const Request req = load_request(input_path);
            setting = req.setting;
            raw = req.raw;
            if (!is_cp(req.setting)) throw UsageError("choi expects a cp.* setting, got '" + req.setting + "'");
            const LinearMapOnMatrices phi = build_map(req.setting, req.payload);
            const Mat c = choi_matrix(phi);
            json d = base_doc("choi", req.setting, req.raw);
            d["verdict"] = "ok";
            d["n"] = phi.n;
            d["m"] = phi.m;
            d["min_eigenvalue"] = min_eigenvalue(c);
            d["choi_matrix"] = to_json(c);
            d["timings"] = {{"total_ms", elapsed_ms(t0)}};
            return Outcome{kExitFeasible, d};
        },
        "choi", setting, raw);
}

Outcome cmd_cpcheck(const std::string& input_path, const Flags& flags)
{
    const auto t0 = Clock::now();
    std::string setting, raw;
    return guarded(
        [&] {
            const Request req = load_request(input_path);
            setting = req.setting;
            raw = req.raw;
            if (!is_cp(req.setting)) throw UsageError("cpcheck expects a cp.* setting, got '" + req.setting + "'");
            const Resolved r = resolve(req.options, flags);
            const LinearMapOnMatrices phi = build_map(req.setting, req.payload);
            const CpVerdict v = cp_check(phi, r.tol, r.seed);
            json d = base_doc("cpcheck", req.setting, req.raw);
            d["verdict"] = v.is_cp ? "cp" : "not_cp";
            d["min_eigenvalue"] = v.choi_min_eig;
            d["tolerance"] = v.tolerance_used;
            if (v.witness)
                d["witness"] = {{"k", v.witness->k},
                                {"input", to_json(v.witness->input)},
                                {"output_min_eigenvalue", v.witness->output_min_eig}};
            d["timings"] = {{"total_ms", elapsed_ms(t0)}};
            return Outcome{verdict_code(d), d};
        },
        "cpcheck", setting, raw);
}

Outcome cmd_sample(const std::string& kind, int degree, std::uint64_t seed, const std::optional<std::string>& out_path,
                   int rows, int cols, int d)
{
    return guarded(
        [&] {
            if (degree < 0) throw UsageError("--degree must be non-negative");
            if (rows < 1 || cols < 1 || d < 1) throw UsageError("--rows, --cols and --d must be positive");
            SchurSample s;
            if (kind == "blaschke") {
                if (degree < 1) throw UsageError("a Blaschke sample needs --degree >= 1");
                s = sample_blaschke(degree, seed);
            } else if (kind == "disk") {
                s = sample_contractive_poly(rows, cols, degree, PolyKind{}, seed);
            } else if (kind == "ball") {
                PolyKind k;
                k.kind = SampleKind::ball;
                k.d = d;
                s = sample_contractive_poly(rows, cols, degree, k, seed);
            } else if (kind == "quiver") {
                PolyKind k;
                k.kind = SampleKind::quiver;
                k.quiver = two_vertex_example();
                k.in_dims = {{cols, cols}};
                k.out_dims = {{rows, rows}};
                s = sample_contractive_poly(rows, cols, degree, k, seed);
            } else {
                throw UsageError("unknown sample kind '" + kind + "' (disk, blaschke, ball, quiver)");
            }
            std::ostringstream args;
            args << "sample " << kind << ' ' << degree << ' ' << seed << ' ' << rows << ' ' << cols << ' ' << d;
            json j = sample_json(s);
            j["seed"] = seed;
            j["degree"] = degree;
            j["provenance"] = provenance(args.str());
            if (!out_path) return Outcome{kExitFeasible, j};
            std::ofstream out(*out_path, std::ios::binary);
            if (!out) throw DataError("", "cannot write '" + *out_path + "'");
            out << render(j);
            json r = base_doc("sample", "", args.str());
            r["verdict"] = "ok";
            r["out"] = *out_path;
            r["kind"] = kind;
            r["norm_upper_bound"] = s.norm_upper_bound;
            return Outcome{kExitFeasible, r};
        },
        "sample", "", kind);
}

Outcome cmd_necessity(const std::string& setting, int trials, std::uint64_t seed, const Flags& flags)
{
    const auto t0 = Clock::now();
    return guarded(
        [&] {
            const std::string name = [&] {
                auto a = aliases().find(setting);
                return a == aliases().end() ? setting : a->second;
            }();
            const auto& known = necessity_settings();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw UsageError("no necessity suite for setting '" + setting + "'");
            if (trials < 1) throw UsageError("--trials must be positive");
            SeriesOptions so;
            if (flags.max_level) so.max_level = *flags.max_level;
            set_budget_from_env(so);
            const NecessityResult res = run_necessity(name, trials, seed, so);
            std::ostringstream args;
            args << "necessity " << name << ' ' << trials << ' ' << seed;
            json d = base_doc("necessity", name, args.str());
            d["trials"] = trials;
            d["seed"] = seed;
            d["worst_margin"] = res.worst_margin;
            d["slack"] = kNecessitySlack;
            d["verdict"] = res.passed ? "passed" : "failed";
            json per = json::array();
            for (std::size_t t = 0; t < res.trials.size(); ++t)
                per.push_back({{"trial", t},
                               {"min_eigenvalue", res.trials[t].min_eigenvalue},
                               {"tail_bound", res.trials[t].tail_bound},
                               {"margin", res.trials[t].margin}});
            d["per_trial"] = per;
            d["timings"] = {{"total_ms", elapsed_ms(t0)}};
            return Outcome{verdict_code(d), d};
        },
        "necessity", setting, setting);
}

}  // namespace picklab::cli
