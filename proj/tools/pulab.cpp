// pulab: command-line front end for the PU-body volume and inequality lab.
//
// JSON goes to stdout, a human-readable table to stderr.  Exit codes:
//   0 pass / success, 3 fail, 4 inconclusive,
//   1 malformed input or unknown name, 2 unsupported method/family.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "pulab/pulab.hpp"

namespace {

using nlohmann::json;
using namespace pulab;

constexpr int kExitError = 1;
constexpr int kExitUnsupported = 2;

struct Unsupported : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Everything a run needs to write its manifest.
struct RunContext
{
    std::string command_line;
    std::optional<std::string> spec_path;
    std::vector<std::uint64_t> seeds;
};

std::string sha256_hex(std::string const& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < length; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("/", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string utc_timestamp()
{
    auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_with_manifest(std::string const& path, std::string const& content,
                         RunContext const& ctx)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << content;
    json manifest = {{"command", ctx.command_line},
                     {"output", path},
                     {"spec_sha256", nullptr},
                     {"seeds", ctx.seeds},
                     {"version", kVersion},
                     {"timestamp", utc_timestamp()}};
    if (ctx.spec_path) {
        manifest["spec_path"] = *ctx.spec_path;
        manifest["spec_sha256"] = sha256_hex(read_file(*ctx.spec_path));
    }
    std::ofstream m(path + ".manifest.json", std::ios::binary);
    if (!m) throw InvalidInput("cannot write '" + path + ".manifest.json'");
    m << manifest.dump(2) << '\n';
}

void emit(json const& j, std::optional<std::string> const& out, RunContext const& ctx)
{
    std::string const text = j.dump(2) + "\n";
    std::cout << text;
    if (out) write_with_manifest(*out, text, ctx);
}

std::vector<double> parse_list(std::string const& text, char const* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (std::exception const&) {
            throw InvalidInput(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw InvalidInput(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_indices(std::string const& text, char const* what)
{
    std::vector<std::size_t> out;
    for (double v : parse_list(text, what)) {
        if (v < 0 || v != std::floor(v)) {
            throw InvalidInput(std::string(what) + ": indices must be nonnegative integers");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

MonotoneFunction parse_monotone(std::string const& text)
{
    if (text == "max") return MonotoneFunction::max();
    if (text == "min") return MonotoneFunction::min();
    auto const colon = text.find(':');
    if (colon != std::string::npos) {
        auto const head = text.substr(0, colon);
        double const v = parse_list(text.substr(colon + 1), "monotone function parameter").at(0);
        if (head == "clipped") return MonotoneFunction::clipped_sum(v);
        if (head == "const") return MonotoneFunction::constant(v);
    }
    throw InvalidInput("monotone function must be max, min, clipped:<c> or const:<c> (got '" +
                       text + "')");
}

std::vector<ConcaveProfile::Knot> parse_knots(std::string const& text)
{
    std::vector<ConcaveProfile::Knot> knots;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto const colon = item.find(':');
        if (colon == std::string::npos) {
            throw InvalidInput("knots must be written x:value,x:value,... (got '" + item + "')");
        }
        auto const x = parse_list(item.substr(0, colon), "knot x").at(0);
        auto const v = parse_list(item.substr(colon + 1), "knot value").at(0);
        knots.push_back({x, v});
    }
    return knots;
}

void print_table(ExperimentReport const& r)
{
    std::ostringstream os;
    os << r.name << ": " << to_string(r.verdict) << '\n';
    std::size_t width = 9;
    for (auto const& s : r.statistics) width = std::max(width, s.label.size());
    os << "  " << std::left << std::setw(static_cast<int>(width)) << "statistic"
       << "  " << std::setw(16) << "value" << "std_error\n";
    for (auto const& s : r.statistics) {
        os << "  " << std::left << std::setw(static_cast<int>(width)) << s.label << "  "
           << std::setw(16) << std::setprecision(8) << s.value << std::setprecision(3)
           << s.std_error << '\n';
    }
    for (auto const& n : r.notes) os << "  note: " << n << '\n';
    std::cerr << os.str();
}

void print_volume(VolumeEstimate const& v)
{
    std::cerr << "volume " << std::setprecision(12) << v.value << " +- "
              << std::setprecision(4) << v.std_error << " (" << to_string(v.method) << ", "
              << v.evaluations << " evaluations)\n";
}

std::uint64_t require_seed(std::optional<std::uint64_t> const& seed, RunContext& ctx,
                           char const* what)
{
    if (!seed) {
        throw InvalidInput(std::string(what) +
                           " draws random samples; pass --seed to make the run replayable");
    }
    ctx.seeds.push_back(*seed);
    return *seed;
}

// ---------------------------------------------------------------- volume

struct VolumeArgs
{
    std::string spec;
    std::string method = "exact";
    std::uint64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    std::uint32_t grid = 200;
    std::optional<std::string> out;
};

int run_volume(VolumeArgs const& a, RunContext& ctx)
{
    ctx.spec_path = a.spec;
    auto const body = read_body_spec(a.spec);
    VolumeEstimate v;
    if (a.method == "exact") {
        auto e = exact_volume(body);
        if (!e) {
            throw Unsupported("no closed-form volume for family '" +
                              std::string(to_string(body.family())) +
                              "'; use --method mc or --method quad");
        }
        v = *e;
    } else if (a.method == "mc") {
        v = mc_volume(body, a.samples, require_seed(a.seed, ctx, "--method mc"));
    } else if (a.method == "cone") {
        auto const seed = require_seed(a.seed, ctx, "--method cone");
        auto cone = ordered_cone_mc_volume(body, a.samples, seed);
        auto const n = static_cast<double>(body.dim());
        double const scale = std::exp(n * std::log(2.0) + std::lgamma(n + 1.0));
        json j = {{"volume", VolumeEstimate{cone.value * scale, cone.std_error * scale,
                                            Method::MonteCarlo, cone.evaluations, cone.seed}},
                  {"ordered_cone", cone}};
        print_volume(j["volume"].get<VolumeEstimate>());
        emit(j, a.out, ctx);
        return 0;
    } else if (a.method == "quad") {
        if (body.dim() > 4) {
            throw Unsupported("quadrature supports dim <= 4 (got " + std::to_string(body.dim()) +
                              ")");
        }
        v = quadrature_volume_low_dim(body, a.grid);
    }
    print_volume(v);
    emit(json(v), a.out, ctx);
    return 0;
}

// ---------------------------------------------------------------- sequence

struct SequenceArgs
{
    std::string spec;
    std::uint64_t samples = 1'000'000;
    std::optional<std::uint64_t> seed;
    double z = 3.0;
    std::optional<std::string> out;
};

int run_sequence(SequenceArgs const& a, RunContext& ctx)
{
    ctx.spec_path = a.spec;
    json doc;
    try {
        doc = json::parse(read_file(a.spec));
    } catch (json::parse_error const& e) {
        throw SpecError("/", std::string("JSON syntax error: ") + e.what());
    }

    ProjectionVolumeSequence seq;
    if (doc.is_object() && doc.contains("entries")) {
        try {
            seq = doc.get<ProjectionVolumeSequence>();
        } catch (json::exception const& e) {
            throw SpecError("/entries", e.what());
        }
    } else if (doc.is_object() && doc.contains("values")) {
        if (!doc["values"].is_array()) throw SpecError("/values", "expected an array of numbers");
        std::vector<double> values;
        for (std::size_t i = 0; i < doc["values"].size(); ++i) {
            if (!doc["values"][i].is_number()) {
                throw SpecError("/values/" + std::to_string(i), "expected a number");
            }
            values.push_back(doc["values"][i].get<double>());
        }
        seq = exact_sequence(values);
    } else {
        auto const body = body_from_json(doc);
        bool needs_mc = false;
        for (std::size_t i = 1; i <= body.dim(); ++i) {
            needs_mc = needs_mc || !exact_volume(project(body, i));
        }
        std::uint64_t seed = 0;
        if (needs_mc) seed = require_seed(a.seed, ctx, "this sequence");
        seq = projection_volume_sequence(body, a.samples, seed);
    }
    auto report = log_concavity_report(seq, a.z);
    if (a.seed) report.seed = a.seed;
    print_table(report);
    emit(json{{"sequence", seq}, {"report", report}}, a.out, ctx);
    return exit_code(report.verdict);
}

// ---------------------------------------------------------------- lemma1

struct LemmaArgs
{
    std::string profile;
    double alpha = 1.0;
    double beta = 0.5;
    std::string knots;
    double length = 1.0;
    std::size_t n = 3;
    std::size_t grid = 1 << 14;
    std::optional<std::string> out;
};

int run_lemma(LemmaArgs const& a, RunContext& ctx)
{
    std::optional<ConcaveProfile> f;
    json profile_json;
    if (a.profile == "affine") {
        f = ConcaveProfile::affine(a.alpha, a.length);
        profile_json = {{"kind", "affine"}, {"alpha", a.alpha}, {"length", a.length}};
    } else if (a.profile == "power") {
        f = ConcaveProfile::power(a.beta, a.length);
        profile_json = {{"kind", "power"}, {"beta", a.beta}, {"length", a.length}};
    } else {
        if (a.knots.empty()) throw InvalidInput("--profile pwl needs --knots x:v,x:v,...");
        auto knots = parse_knots(a.knots);
        f = ConcaveProfile::piecewise_linear(knots);
        json k = json::array();
        for (auto const& kn : knots) k.push_back({kn.x, kn.value});
        profile_json = {{"kind", "pwl"}, {"knots", k}};
    }
    auto const g = lemma1_gap(*f, a.n, a.grid);
    ExperimentReport r;
    r.name = "lemma1";
    r.inputs = {{"profile", profile_json}, {"n", a.n}, {"grid", a.grid}};
    r.add("lhs", g.lhs);
    r.add("rhs", g.rhs);
    r.add("gap", g.gap);
    r.add("bracket", g.bracket);
    if (f->kind() == ConcaveProfile::Kind::Affine && a.length == 1.0) {
        auto const [l, rr] = affine_profile_closed_form(a.alpha, a.n);
        r.add("closed_form_gap", l - rr);
    }
    r.verdict = g.gap >= -g.bracket ? Verdict::Pass : Verdict::Fail;
    print_table(r);
    emit(json(r), a.out, ctx);
    return exit_code(r.verdict);
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs
{
    std::string name;
    std::string spec;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 100'000;
    double z = 3.0;
    std::optional<std::uint64_t> burn_in;
    std::optional<std::uint64_t> thinning;
    std::uint64_t steps = 1;
    std::string thresholds;
    std::string t_values = "0.02";
    std::string t_grid;
    std::size_t n = 2;
    std::string block_a = "0";
    std::string block_b = "1";
    std::string f = "max";
    std::string g = "max";
    std::size_t n_min = 2;
    std::size_t n_max = 5;
    std::uint64_t budget = 1'000'000;
    std::uint64_t volume_samples = 10'000'000;
    std::size_t grid_points = 21;
    std::uint64_t trials = 1000;
    std::uint64_t bootstrap_resamples = 1000;
    std::optional<std::string> out;
    std::optional<std::string> csv;
};

std::vector<std::string> const kExperiments{"neg-corr",  "taylor",      "bn-density", "covariance",
                                            "ratio-scan", "slice-profile", "symmetry"};

BodySpec experiment_body(ExperimentArgs const& a, RunContext& ctx)
{
    if (a.spec.empty()) throw InvalidInput("experiment '" + a.name + "' needs a body-spec file");
    ctx.spec_path = a.spec;
    return read_body_spec(a.spec);
}

ChainConfig chain(ExperimentArgs const& a, std::size_t dim, std::uint64_t seed)
{
    auto c = default_chain_config(dim, seed);
    if (a.burn_in) c.burn_in = *a.burn_in;
    if (a.thinning) c.thinning = *a.thinning;
    c.steps = a.steps;
    return c;
}

int run_experiment(ExperimentArgs const& a, RunContext& ctx)
{
    if (std::find(kExperiments.begin(), kExperiments.end(), a.name) == kExperiments.end()) {
        std::string names;
        for (auto const& n : kExperiments) names += (names.empty() ? "" : ", ") + n;
        throw InvalidInput("unknown experiment '" + a.name + "'; valid names: " + names);
    }
    BootstrapConfig const boot{100, a.bootstrap_resamples};
    ExperimentReport r;
    if (a.name == "neg-corr") {
        auto const body = experiment_body(a, ctx);
        auto const seed = require_seed(a.seed, ctx, "neg-corr");
        std::vector<double> t(body.dim(), 0.0);
        if (!a.thresholds.empty()) t = parse_list(a.thresholds, "--thresholds");
        r = negative_correlation_test(body, t, a.samples, chain(a, body.dim(), seed), a.z, boot);
    } else if (a.name == "taylor") {
        auto const body = experiment_body(a, ctx);
        auto const seed = require_seed(a.seed, ctx, "taylor");
        r = taylor_coefficient_check(body, parse_list(a.t_values, "--t"), a.samples,
                                     chain(a, body.dim(), seed), a.z, a.volume_samples, boot);
    } else if (a.name == "bn-density") {
        auto const seed = require_seed(a.seed, ctx, "bn-density");
        std::vector<double> grid;
        if (a.t_grid.empty()) {
            double const mean = static_cast<double>(a.n) / max_norm_rate(std::max<std::size_t>(a.n, 1));
            for (int k = 0; k < 20; ++k) grid.push_back(mean * (0.1 + 1.9 * k / 19.0));
        } else {
            grid = parse_list(a.t_grid, "--t-grid");
        }
        r = bobkov_nazarov_experiment(a.n, grid, a.samples, seed, a.z, boot);
    } else if (a.name == "covariance") {
        auto const body = experiment_body(a, ctx);
        auto const seed = require_seed(a.seed, ctx, "covariance");
        r = increasing_covariance_test(body, parse_indices(a.block_a, "--block-a"),
                                       parse_indices(a.block_b, "--block-b"),
                                       parse_monotone(a.f), parse_monotone(a.g), a.samples,
                                       chain(a, body.dim(), seed), a.z, boot);
    } else if (a.name == "ratio-scan") {
        auto const body = experiment_body(a, ctx);
        bool needs_mc = false;
        for (std::size_t n = a.n_min; n <= a.n_max + 1; ++n) {
            needs_mc = needs_mc || !exact_volume(body.with_dim(std::max<std::size_t>(n, 1)));
        }
        std::uint64_t seed = 0;
        if (needs_mc) seed = require_seed(a.seed, ctx, "ratio-scan");
        r = ratio_limit_scan(body, a.n_min, a.n_max, a.budget, seed, a.z);
    } else if (a.name == "slice-profile") {
        auto const body = experiment_body(a, ctx);
        auto const seed = require_seed(a.seed, ctx, "slice-profile");
        auto const profile = slice_profile(body, body.dim() + 1, a.grid_points, a.samples, seed);
        r = slice_profile_properties(profile, a.z);
        r.seed = seed;
        r.inputs["body"] = body_to_json(body);
        r.inputs["samples_per_point"] = a.samples;
        r.inputs["profile"] = profile;
        if (a.csv) {
            std::ostringstream os;
            write_csv(os, profile);
            write_with_manifest(*a.csv, os.str(), ctx);
        }
    } else {
        auto const body = experiment_body(a, ctx);
        auto const seed = require_seed(a.seed, ctx, "symmetry");
        r = validate_symmetry(body, a.trials, seed);
    }
    print_table(r);
    emit(json(r), a.out, ctx);
    return exit_code(r.verdict);
}

// ---------------------------------------------------------------- sample

struct SampleArgs
{
    std::string spec;
    std::string method = "hit-and-run";
    std::uint64_t count = 1000;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_attempts = 100'000'000;
    std::optional<std::uint64_t> burn_in;
    std::optional<std::uint64_t> thinning;
    std::uint64_t steps = 1;
    std::size_t n = 2;
    std::optional<std::string> out;
};

int run_sample(SampleArgs const& a, RunContext& ctx)
{
    auto const seed = require_seed(a.seed, ctx, "sample");
    std::optional<PointSet> pts;
    if (a.method == "radial") {
        pts = max_norm_radial_sampler(a.n, a.count, seed);
    } else {
        if (a.spec.empty()) throw InvalidInput("--method " + a.method + " needs a body-spec file");
        ctx.spec_path = a.spec;
        auto const body = read_body_spec(a.spec);
        if (a.method == "rejection") {
            pts = rejection_sample(body, a.count, seed, a.max_attempts);
        } else {
            auto c = default_chain_config(body.dim(), seed);
            if (a.burn_in) c.burn_in = *a.burn_in;
            if (a.thinning) c.thinning = *a.thinning;
            c.steps = a.steps;
            pts = hit_and_run(body, a.count, c);
        }
    }
    std::ostringstream os;
    write_csv(os, *pts);
    if (a.out) {
        write_with_manifest(*a.out, os.str(), ctx);
    } else {
        std::cout << os.str();
    }
    std::cerr << "sampled " << pts->size() << " points in dimension " << pts->dim() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"pulab: volumes, projection sequences and correlation experiments for "
                 "unconditional permutation-invariant convex bodies"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunContext ctx;
    for (int i = 0; i < argc; ++i) ctx.command_line += (i ? " " : "") + std::string(argv[i]);

    VolumeArgs vol;
    auto* c_vol = app.add_subcommand("volume", "Volume of a body by formula, Monte Carlo or quadrature");
    c_vol->add_option("spec", vol.spec, "Body-spec JSON file")->required();
    c_vol->add_option("--method", vol.method, "exact | mc | cone | quad")
        ->check(CLI::IsMember({"exact", "mc", "cone", "quad"}));
    c_vol->add_option("--samples", vol.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    c_vol->add_option("--seed", vol.seed, "Seed (required for mc and cone)");
    c_vol->add_option("--grid", vol.grid, "Quadrature cells per axis")->check(CLI::Range(8u, 1u << 20));
    c_vol->add_option("--out", vol.out, "Also write the JSON here (plus a manifest)");

    SequenceArgs seq;
    auto* c_seq = app.add_subcommand(
        "sequence", "Projection volumes |K_1|..|K_n| and their log-concavity report");
    c_seq->add_option("spec", seq.spec,
                      "Body-spec file, or a replay file with \"entries\" or \"values\"")
        ->required();
    c_seq->add_option("--samples", seq.samples, "Monte Carlo samples per projection")
        ->check(CLI::PositiveNumber);
    c_seq->add_option("--seed", seq.seed, "Seed (required when an entry needs Monte Carlo)");
    c_seq->add_option("--z", seq.z, "Noise threshold in standard errors");
    c_seq->add_option("--out", seq.out, "Also write the JSON here (plus a manifest)");

    LemmaArgs lem;
    auto* c_lem = app.add_subcommand("lemma1", "Integral inequality gap for a concave profile");
    c_lem->add_option("--profile", lem.profile, "affine | power | pwl")
        ->required()
        ->check(CLI::IsMember({"affine", "power", "pwl"}));
    c_lem->add_option("--alpha", lem.alpha, "Affine slope parameter in [0, 1]");
    c_lem->add_option("--beta", lem.beta, "Power exponent in (0, 1]");
    c_lem->add_option("--knots", lem.knots, "Piecewise-linear knots x:v,x:v,... from 0:1");
    c_lem->add_option("--length", lem.length, "Domain length for affine and power profiles");
    c_lem->add_option("--n", lem.n, "Dimension n >= 3")->required();
    c_lem->add_option("--grid", lem.grid, "Simpson intervals");
    c_lem->add_option("--out", lem.out, "Also write the JSON here (plus a manifest)");

    ExperimentArgs ex;
    auto* c_ex = app.add_subcommand("experiment", "Run a named experiment");
    c_ex->add_option("name", ex.name,
                     "neg-corr | taylor | bn-density | covariance | ratio-scan | slice-profile | "
                     "symmetry")
        ->required();
    c_ex->add_option("spec", ex.spec, "Body-spec JSON file");
    c_ex->add_option("--seed", ex.seed, "Seed (required for sampling experiments)");
    c_ex->add_option("--samples", ex.samples, "Samples (per grid point for slice-profile)")
        ->check(CLI::PositiveNumber);
    c_ex->add_option("--z", ex.z, "Noise threshold in standard errors");
    c_ex->add_option("--burn-in", ex.burn_in, "Hit-and-run burn-in moves (default 1000 dim)");
    c_ex->add_option("--thinning", ex.thinning, "Transitions between recorded states (default dim)");
    c_ex->add_option("--steps", ex.steps, "Hit-and-run moves per transition");
    c_ex->add_option("--thresholds", ex.thresholds, "neg-corr thresholds t_1,...,t_n");
    c_ex->add_option("--t", ex.t_values, "taylor: comma-separated t values");
    c_ex->add_option("--t-grid", ex.t_grid, "bn-density: comma-separated t grid");
    c_ex->add_option("--n", ex.n, "bn-density: dimension");
    c_ex->add_option("--block-a", ex.block_a, "covariance: 0-based indices of block a");
    c_ex->add_option("--block-b", ex.block_b, "covariance: 0-based indices of block b");
    c_ex->add_option("--f", ex.f, "covariance: max | min | clipped:<c> | const:<c>");
    c_ex->add_option("--g", ex.g, "covariance: max | min | clipped:<c> | const:<c>");
    c_ex->add_option("--n-min", ex.n_min, "ratio-scan: first dimension");
    c_ex->add_option("--n-max", ex.n_max, "ratio-scan: last dimension");
    c_ex->add_option("--budget", ex.budget, "ratio-scan: Monte Carlo samples per volume");
    c_ex->add_option("--volume-samples", ex.volume_samples,
                     "taylor: Monte Carlo samples per volume without a closed form");
    c_ex->add_option("--grid-points", ex.grid_points, "slice-profile: grid size");
    c_ex->add_option("--trials", ex.trials, "symmetry: trial points");
    c_ex->add_option("--bootstrap-resamples", ex.bootstrap_resamples, "Bootstrap resamples");
    c_ex->add_option("--out", ex.out, "Also write the JSON here (plus a manifest)");
    c_ex->add_option("--csv", ex.csv, "slice-profile: write grid,value CSV here");

    SampleArgs smp;
    auto* c_smp = app.add_subcommand("sample", "Dump sample points as CSV");
    c_smp->add_option("spec", smp.spec, "Body-spec JSON file (not needed for radial)");
    c_smp->add_option("--method", smp.method, "rejection | hit-and-run | radial")
        ->check(CLI::IsMember({"rejection", "hit-and-run", "radial"}));
    c_smp->add_option("--count", smp.count, "Number of points")->check(CLI::PositiveNumber);
    c_smp->add_option("--seed", smp.seed, "Seed")->required();
    c_smp->add_option("--max-attempts", smp.max_attempts, "Rejection attempt budget");
    c_smp->add_option("--burn-in", smp.burn_in, "Hit-and-run burn-in moves");
    c_smp->add_option("--thinning", smp.thinning, "Hit-and-run thinning");
    c_smp->add_option("--steps", smp.steps, "Hit-and-run moves per transition");
    c_smp->add_option("--n", smp.n, "radial: dimension");
    c_smp->add_option("--out", smp.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*c_vol) return run_volume(vol, ctx);
        if (*c_seq) return run_sequence(seq, ctx);
        if (*c_lem) return run_lemma(lem, ctx);
        if (*c_ex) return run_experiment(ex, ctx);
        if (*c_smp) return run_sample(smp, ctx);
    } catch (SpecError const& e) {
        std::cerr << "error: malformed input at " << e.what() << '\n';
        return kExitError;
    } catch (Unsupported const& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
