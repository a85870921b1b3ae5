#include "monopole/engine.hpp"
#include "monopole/enumerate.hpp"
#include "monopole/errors.hpp"
#include "monopole/freudenthal.hpp"
#include "monopole/hash.hpp"
#include "monopole/json_io.hpp"
#include "monopole/series.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using monopole::io::json;

struct CommonOpts {
    std::int64_t order = 0;
    std::int64_t radius = -1;
    int det_sign = 1;
    int threads = 0;
    std::string units = "half";
    std::string out;
    std::string cache_dir;
    bool timings = false;
};

void add_output_flags(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--units", c.units, "exponent display units for the envelope preview")
        ->check(CLI::IsMember({"half", "integer", "doubled"}))
        ->capture_default_str();
    cmd->add_option("--out", c.out, "output path prefix (<prefix>.json, <prefix>.series)");
    cmd->add_option("--cache-dir", c.cache_dir, "reuse byte-identical results keyed by content");
    cmd->add_flag("--timings", c.timings, "include wall time in the envelope (non-reproducible)");
}

void add_series_flags(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--order", c.order, "truncation order in t-powers")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--radius", c.radius,
                    "explicit sup-norm search radius (required for divergent gradings)");
    cmd->add_option("--det-sign", c.det_sign, "sign of the determinant-character term")
        ->check(CLI::IsMember({1, -1}))
        ->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads (default: env, then hardware)");
    add_output_flags(cmd, c);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw monopole::InputError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw monopole::InputError("malformed JSON in '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw monopole::InputError("'" + path + "' must hold a JSON object");
    return j;
}

/* Compact weight flags: optional trailing 'w', comma-separated fundamental
   coordinates ("2w", "0", "1,0"). */
monopole::WeightVector parse_weight_flag(std::string text) {
    if (!text.empty() && (text.back() == 'w' || text.back() == 'W')) text.pop_back();
    monopole::IntVec coords;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            coords.push_back(std::stoll(piece));
        } catch (const std::exception&) {
            throw monopole::InputError("cannot parse weight coordinate '" + piece + "'");
        }
    }
    if (coords.empty()) throw monopole::InputError("empty weight specification");
    return monopole::WeightVector::fundamental(std::move(coords));
}

monopole::IntVec parse_int_list(const std::string& text, const char* what) {
    monopole::IntVec v;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        try {
            v.push_back(std::stoll(piece));
        } catch (const std::exception&) {
            throw monopole::InputError(std::string("cannot parse ") + what + " entry '" +
                                       piece + "'");
        }
    }
    return v;
}

std::string format_t_exponent(std::int64_t t2, const std::string& units) {
    if (units == "doubled") return std::to_string(t2);
    if (t2 % 2 == 0) return std::to_string(t2 / 2);
    return std::to_string(t2) + "/2";
}

json series_preview(const monopole::TruncatedSeries& s, const std::string& units) {
    json preview = json::array();
    std::size_t shown = 0;
    for (const auto& [key, c] : s.terms) {
        if (shown++ == 8) break;
        std::string term = c.str() + " t^" + format_t_exponent(key.t2, units);
        for (std::size_t i = 0; i < key.z.size(); ++i) {
            if (key.z[i] != 0) term += " z" + std::to_string(i + 1) + "^" + std::to_string(key.z[i]);
        }
        preview.push_back(term);
    }
    return preview;
}

struct JobOutput {
    std::string envelope_text;
    std::optional<std::string> series_text;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw monopole::InputError("cannot write '" + path + "'");
    out << text;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/* Runs a job with content-keyed caching: the key covers the command, the
   full input echo, and every computation-relevant flag (threads excluded;
   results are thread-count independent by contract). */
int run_cached(const std::string& command, const json& echo, const std::string& key_extra,
               const CommonOpts& opts, const std::function<JobOutput()>& compute) {
    std::string key;
    if (!opts.cache_dir.empty()) {
        monopole::Sha256 h;
        h.update(command);
        h.update("\n");
        h.update(monopole::io::canonical_dump(echo));
        h.update(key_extra);
        key = h.hex_digest();
        const auto env_hit = read_file(opts.cache_dir + "/" + key + ".env.json");
        if (env_hit) {
            const auto series_hit = read_file(opts.cache_dir + "/" + key + ".series");
            if (!opts.out.empty()) {
                write_file(opts.out + ".json", *env_hit);
                if (series_hit) write_file(opts.out + ".series", *series_hit);
            }
            std::cout << *env_hit;
            return 0;
        }
    }
    const JobOutput result = compute();
    if (!opts.cache_dir.empty()) {
        std::filesystem::create_directories(opts.cache_dir);
        write_file(opts.cache_dir + "/" + key + ".env.json", result.envelope_text);
        if (result.series_text) {
            write_file(opts.cache_dir + "/" + key + ".series", *result.series_text);
        }
    }
    if (!opts.out.empty()) {
        write_file(opts.out + ".json", result.envelope_text);
        if (result.series_text) write_file(opts.out + ".series", *result.series_text);
    }
    std::cout << result.envelope_text;
    return 0;
}

std::string key_extra_for(const CommonOpts& opts, const std::string& more = "") {
    std::ostringstream ss;
    ss << "\norder=" << opts.order << "\nradius=" << opts.radius
       << "\ndet_sign=" << opts.det_sign << "\nunits=" << opts.units
       << "\ntimings=" << (opts.timings ? 1 : 0) << "\n" << more;
    return ss.str();
}

monopole::EvalOptions eval_options(const CommonOpts& c) {
    monopole::EvalOptions o;
    o.order2 = 2 * c.order;
    if (c.radius >= 0) o.radius_override = c.radius;
    o.threads = c.threads;
    o.exponent.det_sign = c.det_sign;
    return o;
}

int run_series_job(const std::string& command, const json& echo, const std::string& grading,
                   const CommonOpts& opts,
                   const std::function<monopole::EvalResult()>& evaluate,
                   const json& extra = json::object()) {
    return run_cached(command, echo, key_extra_for(opts), opts, [&] {
        const auto start = std::chrono::steady_clock::now();
        const monopole::EvalResult res = evaluate();
        json env;
        for (const auto& [k, v] : extra.items()) env[k] = v;
        env["schema"] = "monopole-envelope/1";
        env["command"] = command;
        env["input"] = echo;
        env["units"] = opts.units;
        env["grading"] = grading;
        env["det_sign"] = opts.det_sign;
        env["order2"] = res.series.order2;
        env["radius"] = res.radius;
        if (opts.radius >= 0) env["radius_override"] = opts.radius;
        env["summands"] = res.summands;
        env["properness"] = monopole::io::report_to_json(res.report);
        env["preview"] = series_preview(res.series, opts.units);
        const std::string series_text = monopole::series_to_string(res.series);
        env["series_sha256"] = monopole::Sha256::of(series_text);
        if (opts.timings) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            env["wall_time_ms"] = ms;
        }
        return JobOutput{monopole::io::canonical_dump(env), series_text};
    });
}

int run_report_job(const std::string& command, const json& echo, const CommonOpts& opts,
                   const std::string& key_extra, const std::function<json()>& body) {
    return run_cached(command, echo, key_extra_for(opts, key_extra), opts, [&] {
        json env = body();
        env["schema"] = "monopole-envelope/1";
        env["command"] = command;
        env["input"] = echo;
        return JobOutput{monopole::io::canonical_dump(env), std::nullopt};
    });
}

int run_diff(const std::string& path_a, const std::string& path_b) {
    auto load = [](const std::string& p) {
        std::ifstream in(p);
        if (!in) throw monopole::InputError("cannot open '" + p + "'");
        return monopole::read_series(in);
    };
    const monopole::TruncatedSeries a = load(path_a);
    const monopole::TruncatedSeries b = load(path_b);
    json rep;
    rep["a"] = path_a;
    rep["b"] = path_b;
    if (a.zcount != b.zcount) {
        rep["equal"] = false;
        rep["reason"] = "different variable sets";
        std::cout << monopole::io::canonical_dump(rep);
        return 3;
    }
    const std::int64_t order2 = std::min(a.order2, b.order2);
    rep["compared_order2"] = order2;
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    while (true) {
        while (ia != a.terms.end() && ia->first.t2 > order2) ++ia;
        while (ib != b.terms.end() && ib->first.t2 > order2) ++ib;
        const bool ea = ia == a.terms.end();
        const bool eb = ib == b.terms.end();
        if (ea && eb) break;
        json diff;
        if (!ea && (eb || ia->first < ib->first)) {
            diff = {{"t2", ia->first.t2}, {"z", ia->first.z}, {"a", ia->second.str()}, {"b", "0"}};
        } else if (!eb && (ea || ib->first < ia->first)) {
            diff = {{"t2", ib->first.t2}, {"z", ib->first.z}, {"a", "0"}, {"b", ib->second.str()}};
        } else if (ia->second != ib->second) {
            diff = {{"t2", ia->first.t2},
                    {"z", ia->first.z},
                    {"a", ia->second.str()},
                    {"b", ib->second.str()}};
        } else {
            ++ia;
            ++ib;
            continue;
        }
        rep["equal"] = false;
        rep["first_difference"] = diff;
        std::cout << monopole::io::canonical_dump(rep);
        return 3;
    }
    rep["equal"] = true;
    std::cout << monopole::io::canonical_dump(rep);
    return 0;
}

monopole::Grading parse_grading(const std::string& g) {
    if (g == "homological") return monopole::Grading::homological;
    if (g == "loop") return monopole::Grading::loop;
    if (g == "character") return monopole::Grading::character;
    throw monopole::InputError("unknown grading '" + g + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact graded Hilbert series of quiver gauge theory Coulomb branches"};
    app.require_subcommand(1);

    CommonOpts hilbert_opts, slice_opts, affine_opts, zastava_opts;
    CommonOpts properness_opts, orbit_opts, fold_opts, leaf_opts;
    std::string hilbert_theory, slice_file, slice_quiver, slice_lambda, slice_mu;
    std::string affine_file, zastava_quiver, zastava_alpha;
    std::string properness_theory, properness_grading = "homological";
    std::string properness_domain = "dominant";
    std::string orbit_file, fold_file, leaf_file, diff_a, diff_b;
    std::int64_t leaf_bound = -1;

    CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert series of a framed theory");
    hilbert->add_option("--theory", hilbert_theory, "theory JSON file")->required();
    add_series_flags(hilbert, hilbert_opts);

    CLI::App* slice = app.add_subcommand("slice", "Hilbert series of a finite slice");
    slice->add_option("--slice", slice_file, "slice JSON file");
    slice->add_option("--quiver", slice_quiver, "quiver JSON file (with --lambda/--mu)");
    slice->add_option("--lambda", slice_lambda, "fundamental coordinates, e.g. 2w or 1,0");
    slice->add_option("--mu", slice_mu, "fundamental coordinates");
    add_series_flags(slice, slice_opts);

    CLI::App* affine = app.add_subcommand("affine-slice", "Hilbert series of an affine slice");
    affine->add_option("--slice", affine_file, "slice JSON file (kind affine)")->required();
    add_series_flags(affine, affine_opts);

    CLI::App* zastava = app.add_subcommand("zastava", "multigraded character over partitions");
    zastava->add_option("--quiver", zastava_quiver, "quiver JSON file")->required();
    zastava->add_option("--alpha", zastava_alpha, "coroot coordinates, e.g. 1,1")->required();
    add_series_flags(zastava, zastava_opts);

    CLI::App* properness = app.add_subcommand("properness", "convergence analysis only");
    properness->add_option("--theory", properness_theory, "theory JSON file")->required();
    properness->add_option("--grading", properness_grading, "homological | loop | character")
        ->capture_default_str();
    properness->add_option("--domain", properness_domain, "dominant | partitions")
        ->check(CLI::IsMember({"dominant", "partitions"}))
        ->capture_default_str();
    properness->add_option("--det-sign", properness_opts.det_sign, "determinant term sign")
        ->check(CLI::IsMember({1, -1}));
    add_output_flags(properness, properness_opts);

    CLI::App* orbit = app.add_subcommand("orbit-rep", "dominant orbit representative");
    orbit->add_option("--job", orbit_file, "JSON with quiver fields and \"weight\"")->required();
    add_output_flags(orbit, orbit_opts);

    CLI::App* fold_cmd = app.add_subcommand("fold", "fold a Cartan matrix by an automorphism");
    fold_cmd->add_option("--job", fold_file, "JSON with quiver fields and \"sigma\"")->required();
    add_output_flags(fold_cmd, fold_opts);

    CLI::App* leaf = app.add_subcommand("leaf-interval", "dominant weights between mu and lambda");
    leaf->add_option("--slice", leaf_file, "slice JSON file")->required();
    leaf->add_option("--energy-bound", leaf_bound, "delta-coefficient cut (affine kind)");
    add_output_flags(leaf, leaf_opts);

    CLI::App* diff = app.add_subcommand("diff", "compare two series files");
    diff->add_option("a", diff_a, "first series file")->required();
    diff->add_option("b", diff_b, "second series file")->required();

    try {
        app.parse(argc, argv);

        if (hilbert->parsed()) {
            const json echo = monopole::io::theory_to_json(
                monopole::io::theory_from_json(load_json(hilbert_theory)));
            return run_series_job("hilbert", echo, "homological", hilbert_opts, [&] {
                const auto T = monopole::io::theory_from_json(echo);
                return monopole::hilbert_series(T, eval_options(hilbert_opts));
            });
        }
        if (slice->parsed()) {
            monopole::SliceLabel label;
            if (!slice_file.empty()) {
                label = monopole::io::slice_from_json(load_json(slice_file));
            } else if (!slice_quiver.empty() && !slice_lambda.empty() && !slice_mu.empty()) {
                label = monopole::SliceLabel::finite_label(
                    monopole::io::quiver_from_json(load_json(slice_quiver)),
                    parse_weight_flag(slice_lambda), parse_weight_flag(slice_mu));
            } else {
                throw monopole::InputError("pass --slice or all of --quiver/--lambda/--mu");
            }
            if (label.kind != monopole::SliceKind::finite) {
                throw monopole::InputError("'slice' expects a finite label; use affine-slice");
            }
            const json echo = monopole::io::slice_to_json(label);
            return run_series_job("slice", echo, "loop", slice_opts, [&] {
                return monopole::slice_hilbert_series(label, eval_options(slice_opts));
            });
        }
        if (affine->parsed()) {
            const monopole::SliceLabel label =
                monopole::io::slice_from_json(load_json(affine_file));
            if (label.kind != monopole::SliceKind::affine) {
                throw monopole::InputError("'affine-slice' expects an affine label");
            }
            json echo = monopole::io::slice_to_json(label);
            json extra = json::object();
            if (label.lambda_aff->energy != 0) extra["energy_shift"] = label.lambda_aff->energy;
            return run_series_job(
                "affine-slice", echo, "loop", affine_opts,
                [&] { return monopole::slice_hilbert_series(label, eval_options(affine_opts)); },
                extra);
        }
        if (zastava->parsed()) {
            const monopole::Quiver q = monopole::io::quiver_from_json(load_json(zastava_quiver));
            const monopole::IntVec alpha = parse_int_list(zastava_alpha, "alpha");
            json echo = monopole::io::quiver_to_json(q);
            echo["alpha"] = alpha;
            return run_series_job("zastava", echo, "character", zastava_opts, [&] {
                return monopole::zastava_character(q, alpha, eval_options(zastava_opts));
            });
        }
        if (properness->parsed()) {
            const monopole::FramedTheory T =
                monopole::io::theory_from_json(load_json(properness_theory));
            const monopole::Grading g = parse_grading(properness_grading);
            const monopole::DomainKind domain = properness_domain == "partitions"
                                                    ? monopole::DomainKind::partitions
                                                    : monopole::DomainKind::dominant;
            const json echo = monopole::io::theory_to_json(T);
            return run_report_job(
                "properness", echo, properness_opts,
                "grading=" + properness_grading + "\ndomain=" + properness_domain, [&] {
                    monopole::ExponentOptions eo;
                    eo.det_sign = properness_opts.det_sign;
                    const auto rep =
                        monopole::properness_check(T, g, std::nullopt, eo, domain);
                    json body;
                    body["grading"] = properness_grading;
                    body["report"] = monopole::io::report_to_json(rep);
                    return body;
                });
        }
        if (orbit->parsed()) {
            const json job = load_json(orbit_file);
            const monopole::Quiver q = monopole::io::quiver_from_json(job);
            const monopole::AffineWeight w =
                monopole::io::affine_weight_from_json(monopole::io::field(job, "weight"));
            json echo = monopole::io::quiver_to_json(q);
            echo["weight"] = monopole::io::affine_weight_to_json(w);
            return run_report_job("orbit-rep", echo, orbit_opts, "", [&] {
                const auto rs = monopole::build_root_system(monopole::cartan_matrix(q));
                json body;
                body["representative"] =
                    monopole::io::affine_weight_to_json(monopole::orbit_representative(w, rs));
                return body;
            });
        }
        if (fold_cmd->parsed()) {
            const json job = load_json(fold_file);
            const monopole::Quiver q = monopole::io::quiver_from_json(job);
            const monopole::IntVec sigma64 =
                monopole::io::int_vector(monopole::io::field(job, "sigma"), "sigma");
            json echo = monopole::io::quiver_to_json(q);
            echo["sigma"] = sigma64;
            return run_report_job("fold", echo, fold_opts, "", [&] {
                std::vector<int> sigma;
                for (const auto x : sigma64) sigma.push_back(static_cast<int>(x));
                json body;
                body["cartan"] = monopole::io::cartan_to_json(monopole::fold(q, sigma));
                return body;
            });
        }
        if (leaf->parsed()) {
            const monopole::SliceLabel label = monopole::io::slice_from_json(load_json(leaf_file));
            const json echo = monopole::io::slice_to_json(label);
            std::optional<std::int64_t> bound;
            if (leaf_bound >= 0) bound = leaf_bound;
            return run_report_job("leaf-interval", echo, leaf_opts,
                                  "energy_bound=" + std::to_string(leaf_bound), [&] {
                                      const auto interval = monopole::leaf_interval(label, bound);
                                      json body;
                                      body["interval"] = monopole::io::leaf_interval_to_json(
                                          interval, label.kind);
                                      if (bound) body["energy_bound"] = *bound;
                                      if (label.kind == monopole::SliceKind::affine &&
                                          label.lambda_aff->energy != 0) {
                                          body["energy_shift"] = label.lambda_aff->energy;
                                      }
                                      return body;
                                  });
        }
        if (diff->parsed()) return run_diff(diff_a, diff_b);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const monopole::DomainError& e) {
        json err;
        err["error"] = {{"code", monopole::errc_name(e.code())}, {"message", e.what()}};
        std::cout << monopole::io::canonical_dump(err);
        return 2;
    } catch (const monopole::InputError& e) {
        json err;
        err["error"] = {{"code", "input"}, {"message", e.what()}};
        std::cout << monopole::io::canonical_dump(err);
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"code", "internal"}, {"message", e.what()}};
        std::cout << monopole::io::canonical_dump(err);
        return 1;
    }
}
