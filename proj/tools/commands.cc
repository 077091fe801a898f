// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "qwalk/boundedness.h"
#include "qwalk/dr_walk.h"
#include "qwalk/line_walk.h"
#include "qwalk/polya.h"
#include "qwalk/sampling.h"
#include "qwalk/spectral.h"

#ifndef QWALK_VERSION
#define QWALK_VERSION "0.0.0"
#endif

namespace qwalk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::complex<double> parse_complex(const std::string &text) {
    const auto comma = text.find(',');
    auto number = [&text](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw ConfigError("not a complex number: '" + text + "'");
        }
        if (used != s.size()) throw ConfigError("not a complex number: '" + text + "'");
        return v;
    };
    if (comma == std::string::npos) return {number(text), 0.0};
    return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// ---- output files --------------------------------------------------------

struct Output {
    fs::path dir;
    std::string format;  // csv | json
    std::string command;
    json config;

    fs::path path_for(const std::string &name, const std::string &ext) const {
        return dir / (command + "_" + name + "." + ext);
    }

    json header() const {
        return {{"format_version", kFormatVersion},
                {"artifact_version", QWALK_VERSION},
                {"command", command},
                {"config", config}};
    }

    // One observable per file. Cells are json numbers, strings or booleans.
    fs::path table(const std::string &name, const std::vector<std::string> &columns,
                   const std::vector<std::vector<json>> &rows) const {
        fs::create_directories(dir);
        if (format == "json") {
            json doc = header();
            doc["columns"] = columns;
            doc["rows"] = rows;
            const fs::path p = path_for(name, "json");
            std::ofstream(p) << doc.dump(2) << '\n';
            return p;
        }
        const fs::path p = path_for(name, "csv");
        std::ofstream os(p);
        os << "# format_version: " << kFormatVersion << '\n';
        os << "# artifact_version: " << QWALK_VERSION << '\n';
        os << "# command: " << command << '\n';
        os << "# config: " << config.dump() << '\n';
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
        for (const auto &row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                const json &cell = row[i];
                if (cell.is_number_float()) {
                    os << format_double(cell.get<double>());
                } else if (cell.is_string()) {
                    os << cell.get<std::string>();
                } else {
                    os << cell.dump();
                }
            }
            os << '\n';
        }
        return p;
    }

    fs::path report(const std::string &name, const json &data) const {
        fs::create_directories(dir);
        json doc = header();
        doc["report"] = data;
        const fs::path p = path_for(name, "json");
        std::ofstream(p) << doc.dump(2) << '\n';
        return p;
    }
};

struct CommonOptions {
    std::string out_dir = ".";
    std::string format = "csv";
};

void add_common(CLI::App *sub, CommonOptions &common) {
    sub->add_option("-o,--out", common.out_dir, "Output directory (created as needed)")->capture_default_str();
    sub->add_option("--format", common.format, "Plot-data format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

Output make_output(const CommonOptions &common, const std::string &command, json config) {
    config["format"] = common.format;
    return Output{common.out_dir, common.format, command, std::move(config)};
}

std::pair<Complex, Complex> normalized_pair(const std::string &first, const std::string &second) {
    const Complex a = parse_complex(first);
    const Complex b = parse_complex(second);
    const double norm = std::sqrt(abs2(a) + abs2(b));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ConfigError("initial chirality state must be nonzero");
    return {a / norm, b / norm};
}

// ---- coins ---------------------------------------------------------------

struct CoinOptions {
    std::string coin = "hadamard";
    int k = 0;
    int delta = 1;
    std::string alpha = "1";
    std::string beta = "0";
    double theta = 0.0;
};

void add_coin_options(CLI::App *sub, CoinOptions &opt, bool with_delta) {
    sub->add_option("--coin", opt.coin, "Coin family")
        ->check(CLI::IsMember({"hadamard", "identity", "reflecting", "periodic", "custom"}))
        ->capture_default_str();
    sub->add_option("--k", opt.k, "Rotation period parameter: C_n = R(n pi / k)");
    sub->add_option("--alpha", opt.alpha, "Custom coin alpha, 're' or 're,im'")->capture_default_str();
    sub->add_option("--beta", opt.beta, "Custom coin beta")->capture_default_str();
    sub->add_option("--theta", opt.theta, "Custom coin phase theta")->capture_default_str();
    if (with_delta) sub->add_option("--delta", opt.delta, "Half-period for constant coins")->capture_default_str();
}

PeriodicCoinSpec resolve_spec(const CoinOptions &opt) {
    if (opt.coin == "periodic") {
        if (opt.k < 1) throw ConfigError("--coin periodic needs --k >= 1");
        return periodic_spec(opt.k);
    }
    if (opt.delta < 1) throw ConfigError("--delta must be >= 1");
    Coin c;
    if (opt.coin == "hadamard") {
        c = Coin::hadamard();
    } else if (opt.coin == "reflecting") {
        c = Coin::reflecting();
    } else if (opt.coin == "custom") {
        const auto [alpha, beta] = normalized_pair(opt.alpha, opt.beta);
        c = make_coin(alpha, beta, opt.theta);
    }
    return PeriodicCoinSpec(opt.delta, std::vector<Coin>(static_cast<std::size_t>(2 * opt.delta), c));
}

json coin_config(const CoinOptions &opt, bool with_delta) {
    json j{{"coin", opt.coin}};
    if (opt.coin == "periodic") j["k"] = opt.k;
    if (opt.coin == "custom") {
        const auto [alpha, beta] = normalized_pair(opt.alpha, opt.beta);
        j["alpha"] = complex_json(alpha);
        j["beta"] = complex_json(beta);
        j["theta"] = opt.theta;
    }
    if (with_delta && opt.coin != "periodic") j["delta"] = opt.delta;
    return j;
}

// ---- walk ----------------------------------------------------------------

struct WalkOptions {
    CommonOptions common;
    CoinOptions coin;
    std::int64_t steps = 200;
    std::int64_t start = 0;
    std::string left = "1";
    std::string right = "1";
};

double binomial_probability(std::int64_t t, std::int64_t displacement) {
    if ((t + displacement) % 2 != 0 || std::abs(displacement) > t) return 0.0;
    const double k = static_cast<double>((t + displacement) / 2);
    const double n = static_cast<double>(t);
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::numbers::ln2);
}

int cmd_walk(const WalkOptions &opt, std::ostream &out) {
    if (opt.steps < 0) throw ConfigError("--steps must be >= 0");
    const auto [a, b] = normalized_pair(opt.left, opt.right);
    const CoinMap coins = CoinMap::periodic(resolve_spec(opt.coin));
    const LineWalkState initial = LineWalkState::localized(opt.start, a, b);

    json config = coin_config(opt.coin, false);
    config.update({{"steps", opt.steps}, {"start", opt.start}, {"left", complex_json(a)}, {"right", complex_json(b)}});
    const Output output = make_output(opt.common, "walk", config);

    std::vector<std::vector<json>> series_rows{{0, 0.0, 0.0, 0.0}};
    LineWalkState state = initial;
    for (std::int64_t t = 1; t <= opt.steps; ++t) {
        state = step(state, coins);
        const Moments m = moments(distribution(state));
        series_rows.push_back({t, m.mean, m.stddev, std::sqrt(static_cast<double>(t))});
    }
    output.table("stddev", {"t", "mean", "stddev", "classical_stddev"}, series_rows);

    const DistributionOverLine dist = distribution(state);
    std::vector<std::vector<json>> dist_rows;
    for (std::int64_t n = opt.start - opt.steps; n <= opt.start + opt.steps; ++n) {
        dist_rows.push_back({n, dist.at(n), binomial_probability(opt.steps, n - opt.start)});
    }
    output.table("distribution", {"n", "probability", "classical_probability"}, dist_rows);

    const Moments final_moments = moments(dist);
    out << "walk: t=" << opt.steps << " stddev=" << format_double(final_moments.stddev) << '\n';
    return kExitOk;
}

// ---- bounded -------------------------------------------------------------

struct BoundedOptions {
    CommonOptions common;
    int k = 0;
    std::int64_t start = 0;
    std::int64_t steps = 1000;
    std::int64_t radius = 0;
    std::vector<std::int64_t> assume_bounds;
};

int cmd_bounded(const BoundedOptions &opt, std::ostream &out) {
    if (opt.k < 1) throw ConfigError("--k must be >= 1");
    if (opt.steps < 0) throw ConfigError("--steps must be >= 0");
    const std::int64_t radius = opt.radius > 0 ? opt.radius : 4 * static_cast<std::int64_t>(opt.k);
    if (!opt.assume_bounds.empty() && (opt.assume_bounds.size() != 2 || opt.assume_bounds[0] > opt.assume_bounds[1])) {
        throw ConfigError("--assume-bounds needs LOWER UPPER with LOWER <= UPPER");
    }

    const CoinMap coins = periodic_coin(opt.k);
    const LineWalkState initial = symmetric_initial_state(opt.start);
    const BoundednessVerdict verdict = classify(coins, opt.start, radius);

    json config{{"k", opt.k}, {"start", opt.start}, {"steps", opt.steps}, {"radius", radius}};
    if (!opt.assume_bounds.empty()) config["assume_bounds"] = opt.assume_bounds;
    const Output output = make_output(opt.common, "bounded", config);

    json report{{"verdict", to_string(verdict.kind)}};
    if (verdict.kind == BoundednessVerdict::Kind::Bounded) {
        report["lower"] = verdict.lower;
        report["upper"] = verdict.upper;
    }
    if (verdict.kind == BoundednessVerdict::Kind::Inconclusive) report["search_radius"] = verdict.search_radius;

    BoundednessVerdict checked = verdict;
    if (!opt.assume_bounds.empty()) checked = BoundednessVerdict::bounded(opt.assume_bounds[0], opt.assume_bounds[1]);

    int code = kExitOk;
    if (checked.kind == BoundednessVerdict::Kind::Bounded) {
        json check{{"lower", checked.lower}, {"upper", checked.upper}, {"steps", opt.steps}};
        try {
            verify_support(initial, coins, opt.steps, checked);
            check["verified"] = true;
        } catch (const VerdictMismatch &e) {
            check["verified"] = false;
            check["escape_time"] = e.time();
            check["escape_position"] = e.position();
            code = kExitVerdictMismatch;
        }
        report["support_check"] = check;
    } else {
        // The escape probe uses the scan radius as its window.
        const auto t = escape_time(initial, coins, opt.start - radius, opt.start + radius,
                                   4 * static_cast<std::int64_t>(opt.k) * radius, 1e-12);
        report["escape_check"] = {{"window", radius},
                                  {"max_steps", 4 * static_cast<std::int64_t>(opt.k) * radius},
                                  {"escaped", t.has_value()},
                                  {"escape_time", t ? json(*t) : json(nullptr)}};
    }
    output.report("report", report);
    out << "bounded: k=" << opt.k << " verdict=" << to_string(verdict.kind) << '\n';
    return code;
}

// ---- spectral ------------------------------------------------------------

struct SpectralOptions {
    CommonOptions common;
    CoinOptions coin{"periodic", 0, 1};
    int grid = 2048;
    std::int64_t start = 0;
    std::string left = "1";
    std::string right = "1";
    bool strict = false;
};

int cmd_spectral(const SpectralOptions &opt, std::ostream &out) {
    if (opt.grid < 64 || opt.grid % 2 != 0) throw ConfigError("--grid must be even and >= 64");
    const auto [a, b] = normalized_pair(opt.left, opt.right);
    const PeriodicCoinSpec spec = resolve_spec(opt.coin);
    const LineWalkState initial = LineWalkState::localized(opt.start, a, b);

    json config = coin_config(opt.coin, true);
    config.update({{"grid", opt.grid},
                   {"start", opt.start},
                   {"left", complex_json(a)},
                   {"right", complex_json(b)},
                   {"strict", opt.strict}});
    const Output output = make_output(opt.common, "spectral", config);

    const SpectralReport rep = asymptotic_moments(spec, initial, opt.grid);
    const BandStructure &bands = rep.bands;
    const BlochOperator bloch = build_bloch(spec, opt.start % 2 == 0 ? Sublattice::Even : Sublattice::Odd);

    std::vector<std::vector<json>> rows;
    for (std::size_t m = 0; m < bands.omega.size(); ++m) {
        for (int l = 0; l < bands.dim; ++l) {
            const auto L = static_cast<std::size_t>(l);
            rows.push_back({m, bands.omega[m], l, bands.phase[L][m], bands.velocity[L][m], rep.band_weights[L][m]});
        }
    }
    output.table("bands", {"omega_index", "omega", "band", "phase", "velocity", "weight"}, rows);

    // Bands whose weight profiles coincide to 1e-9 along the whole grid.
    json identical = json::array();
    for (int l = 0; l < bands.dim; ++l) {
        for (int r = l + 1; r < bands.dim; ++r) {
            double diff = 0.0;
            for (std::size_t m = 0; m < bands.omega.size(); ++m) {
                diff = std::max(diff, std::abs(rep.band_weights[static_cast<std::size_t>(l)][m] -
                                               rep.band_weights[static_cast<std::size_t>(r)][m]));
            }
            if (diff <= 1e-9) identical.push_back({l, r});
        }
    }

    const int period = spec.period();
    json report{{"delta", spec.delta()},
                {"bands", bands.dim},
                {"drift", rep.drift},
                {"var_coeff", rep.var_coeff},
                {"var_coeff_per_cycle", rep.var_coeff * period * period},
                {"stddev_slope_per_step", std::sqrt(std::max(rep.var_coeff, 0.0))},
                {"flat_bands", rep.flat_bands},
                {"degenerate_crossing", rep.degenerate_crossing},
                {"degenerate_points", rep.degenerate_points},
                {"indeterminate_order", rep.indeterminate_order},
                {"max_band_deviation", max_band_deviation(bands)},
                {"finite_difference_deviation", finite_difference_deviation(bloch, bands)},
                {"max_weight_norm_error", rep.max_weight_norm_error},
                {"identical_weight_pairs", identical}};
    output.report("report", report);

    out << "spectral: drift=" << format_double(rep.drift) << " var_coeff=" << format_double(rep.var_coeff)
        << " flat=" << (rep.flat_bands ? "true" : "false") << '\n';
    if (opt.strict && (rep.degenerate_crossing || rep.indeterminate_order)) return kExitSpectralDegeneracy;
    return kExitOk;
}

// ---- dr --------------------------------------------------------------------

struct DROptions {
    CommonOptions common;
    std::string shift = "standard";
    int specs = 100;
    int states = 100;
    int realness_trials = 1000;
    std::uint64_t seed = 2026;
    double tolerance = 1e-12;
};

constexpr double kSeparationThreshold = 0.1;

int cmd_dr(const DROptions &opt, std::ostream &out) {
    if (opt.specs < 1 || opt.states < 1 || opt.realness_trials < 1) throw ConfigError("trial counts must be >= 1");
    const ShiftKind shift = opt.shift == "flip" ? ShiftKind::Flip : ShiftKind::Standard;
    json config{{"shift", opt.shift},
                {"specs", opt.specs},
                {"states", opt.states},
                {"realness_trials", opt.realness_trials},
                {"seed", opt.seed},
                {"tolerance", opt.tolerance}};
    const Output output = make_output(opt.common, "dr", config);
    Rng rng(opt.seed);

    // Embedding: W_DR and the two-step coin walk on coin-embedded states.
    double embed_dev = 0.0;
    double norm_drift = 0.0;
    auto compare = [&](const DRSpec &spec, const TwoCopyState &state) {
        const TwoCopyState dr = dr_step(spec, state);
        const TwoCopyState pdc = pdc_two_step(pdc_from_dr(spec, shift), state, shift);
        embed_dev = std::max(embed_dev, dr.max_difference(pdc));
        norm_drift = std::max(norm_drift, std::abs(dr.norm_squared() - state.norm_squared()));
    };
    const DRSpec hadamard = hadamard_dr_spec();
    for (int s = 0; s < opt.states; ++s) compare(hadamard, random_embedded_state(rng, 4));
    const double hadamard_dev = embed_dev;
    for (int i = 0; i < opt.specs; ++i) {
        const DRSpec spec = random_dr_spec(rng, 16);
        for (int s = 0; s < opt.states; ++s) compare(spec, random_embedded_state(rng, 4));
    }

    // Realness of the diagonal witness.
    double dr_imag = 0.0;
    double generalized_imag = 0.0;
    double closed_form_dev = 0.0;
    for (int i = 0; i < opt.realness_trials; ++i) {
        const std::int64_t n = static_cast<std::int64_t>(rng() % 21) - 10;
        dr_imag = std::max(dr_imag, std::abs(realness_witness(random_dr_spec(rng, 8), n).imag()));
        const int width = 1 + static_cast<int>(rng() % 3);
        const SequenceFamily p = random_sequence_family(rng, width, 8);
        const SequenceFamily q = random_sequence_family(rng, width, 8);
        const Complex w = generalized_dr_witness(p, q, n);
        generalized_imag = std::max(generalized_imag, std::abs(w.imag()));
        closed_form_dev = std::max(closed_form_dev, std::abs(w - generalized_witness_closed_form(p, q, n)));
    }

    const Complex separating = realness_witness(separating_pdc_spec(), 0, shift);

    const bool embedding_ok = embed_dev <= opt.tolerance;
    const bool realness_ok = dr_imag <= opt.tolerance && generalized_imag <= opt.tolerance &&
                             closed_form_dev <= opt.tolerance;
    const bool separation_ok = std::abs(separating.imag()) > kSeparationThreshold;

    json report{{"embedding",
                 {{"hadamard_max_deviation", hadamard_dev},
                  {"max_deviation", embed_dev},
                  {"max_norm_drift", norm_drift},
                  {"tolerance", opt.tolerance},
                  {"pass", embedding_ok}}},
                {"realness",
                 {{"dr_max_imag", dr_imag},
                  {"generalized_max_imag", generalized_imag},
                  {"closed_form_max_deviation", closed_form_dev},
                  {"pass", realness_ok}}},
                {"separation",
                 {{"alpha", 1.0 / std::sqrt(2.0)},
                  {"beta", 1.0 / std::sqrt(2.0)},
                  {"theta", std::numbers::pi / 2.0},
                  {"witness", complex_json(separating)},
                  {"abs_imag", std::abs(separating.imag())},
                  {"threshold", kSeparationThreshold},
                  {"pass", separation_ok}}}};
    output.report("report", report);

    out << "dr: shift=" << opt.shift << " embedding_dev=" << format_double(embed_dev)
        << " witness_imag=" << format_double(separating.imag()) << '\n';
    return embedding_ok && realness_ok && separation_ok ? kExitOk : kExitDRAgreement;
}

// ---- polya -----------------------------------------------------------------

struct PolyaOptions {
    CommonOptions common;
    std::int64_t r0 = 10;
    std::int64_t b0 = 10;
    std::int64_t steps = 200;
    std::int64_t series_steps = 2000;
    std::int64_t samples = 10000;
    std::int64_t classical_steps = 10000;
    int bins = 50;
    std::uint64_t seed = 2026;
    std::string red = "1";
    std::string black = "0";
};

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Classical urn after n draws: r - r0 is beta-binomial(n, r0, b0).
double beta_binomial(std::int64_t n, std::int64_t k, std::int64_t r0, std::int64_t b0) {
    const double N = static_cast<double>(n), K = static_cast<double>(k);
    const double log_choose = std::lgamma(N + 1.0) - std::lgamma(K + 1.0) - std::lgamma(N - K + 1.0);
    return std::exp(log_choose + log_beta(K + static_cast<double>(r0), N - K + static_cast<double>(b0)) -
                    log_beta(static_cast<double>(r0), static_cast<double>(b0)));
}

int cmd_polya(const PolyaOptions &opt, std::ostream &out) {
    if (opt.r0 < 1 || opt.b0 < 1) throw ConfigError("--r0 and --b0 must be >= 1");
    if (opt.steps < 0 || opt.series_steps < 1 || opt.samples < 1 || opt.classical_steps < 0 || opt.bins < 1) {
        throw ConfigError("--steps >= 0, --series-steps >= 1, --samples >= 1, --classical-steps >= 0, --bins >= 1");
    }
    const auto [ca, cb] = normalized_pair(opt.red, opt.black);
    json config{{"r0", opt.r0},
                {"b0", opt.b0},
                {"steps", opt.steps},
                {"series_steps", opt.series_steps},
                {"samples", opt.samples},
                {"classical_steps", opt.classical_steps},
                {"bins", opt.bins},
                {"seed", opt.seed},
                {"red", complex_json(ca)},
                {"black", complex_json(cb)}};
    const Output output = make_output(opt.common, "polya", config);

    UrnWalkState state = UrnWalkState::start(opt.r0, opt.b0, ca, cb);
    for (std::int64_t t = 0; t < opt.steps; ++t) state = urn_step(state);
    const auto p = state.red_distribution();

    std::vector<std::vector<json>> dist_rows;
    double mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::int64_t r = state.first_red() + static_cast<std::int64_t>(i);
        mean += p[i] * static_cast<double>(r);
        const std::int64_t k = r - opt.r0;
        const double classical = k >= 0 && k <= opt.steps ? beta_binomial(opt.steps, k, opt.r0, opt.b0) : 0.0;
        dist_rows.push_back({r, state.total() - r, p[i], classical});
    }
    output.table("distribution", {"r", "b", "probability", "classical_probability"}, dist_rows);

    double m2 = 0.0, m3 = 0.0, left_mass = 0.0, right_mass = 0.0;
    const double quarter = static_cast<double>(opt.steps) / 4.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = static_cast<double>(state.first_red() + static_cast<std::int64_t>(i));
        const double d = r - mean;
        m2 += p[i] * d * d;
        m3 += p[i] * d * d * d;
        const double rel = r - static_cast<double>(opt.r0);
        if (rel < quarter) left_mass += p[i];
        if (rel > 3.0 * quarter) right_mass += p[i];
    }
    const double skew_r = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

    const ClassicalUrnResult classical = classical_urn_run(opt.r0, opt.b0, opt.classical_steps, opt.samples, opt.seed);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(opt.bins), 0);
    for (double x : classical.fractions) {
        auto bin = static_cast<std::int64_t>(x * opt.bins);
        bin = std::clamp<std::int64_t>(bin, 0, opt.bins - 1);
        ++counts[static_cast<std::size_t>(bin)];
    }
    std::vector<std::vector<json>> hist_rows;
    const double width = 1.0 / opt.bins;
    for (int i = 0; i < opt.bins; ++i) {
        const double lo = i * width, hi = (i + 1) * width, mid = (lo + hi) / 2.0;
        const double density = std::exp((opt.r0 - 1.0) * std::log(mid) + (opt.b0 - 1.0) * std::log1p(-mid) -
                                        log_beta(static_cast<double>(opt.r0), static_cast<double>(opt.b0)));
        const auto c = counts[static_cast<std::size_t>(i)];
        hist_rows.push_back({i, lo, hi, c, static_cast<double>(c) / (static_cast<double>(opt.samples) * width), density});
    }
    output.table("classical", {"bin", "x_low", "x_high", "count", "density", "beta_density"}, hist_rows);

    const auto series = urn_stddev_series(opt.r0, opt.b0, opt.series_steps, ca, cb);
    std::vector<std::vector<json>> series_rows;
    for (const auto &s : series) series_rows.push_back({s.t, s.stddev, s.stddev_per_t});
    output.table("stddev", {"t", "stddev", "stddev_per_t"}, series_rows);

    const double final_ratio = series.back().stddev_per_t;
    double max_rel_dev = 0.0;
    for (const auto &s : series) {
        if (2 * s.t < opt.series_steps) continue;
        max_rel_dev = std::max(max_rel_dev, std::abs(s.stddev_per_t - final_ratio) / final_ratio);
    }
    const double beta_var = beta_variance(static_cast<double>(opt.r0), static_cast<double>(opt.b0));

    json report{{"quantum",
                 {{"time", state.time()},
                  {"norm_error", std::abs(state.norm_squared() - 1.0)},
                  {"guard_hits", state.guard_hits()},
                  {"mean_r", mean},
                  {"stddev_r", std::sqrt(m2)},
                  {"skewness_r", skew_r},
                  {"skewness_b", -skew_r},
                  {"lower_quarter_mass", left_mass},
                  {"upper_quarter_mass", right_mass},
                  {"middle_mass", 1.0 - left_mass - right_mass}}},
                {"classical",
                 {{"steps", opt.classical_steps},
                  {"samples", opt.samples},
                  {"mean_x", classical.mean},
                  {"variance_x", classical.variance},
                  {"beta_variance", beta_var},
                  {"relative_variance_error", std::abs(classical.variance - beta_var) / beta_var}}},
                {"stddev_series",
                 {{"t_max", opt.series_steps},
                  {"final_stddev_per_t", final_ratio},
                  {"max_relative_deviation_last_half", max_rel_dev}}}};
    output.report("report", report);

    out << "polya: mean_r=" << format_double(mean) << " skewness_r=" << format_double(skew_r)
        << " sigma/t(final)=" << format_double(final_ratio) << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Position-dependent-coin quantum walks: simulation, boundedness, Bloch spectra, "
                 "double-reflection comparison and the quantum Polya urn",
                 "qwalk"};
    app.set_version_flag("--version", std::string(QWALK_VERSION));
    app.require_subcommand(1);

    WalkOptions walk;
    CLI::App *walk_cmd = app.add_subcommand("walk", "Evolve a walk on the line; write the distribution and stddev series");
    add_common(walk_cmd, walk.common);
    add_coin_options(walk_cmd, walk.coin, false);
    walk_cmd->add_option("--steps", walk.steps, "Number of steps")->capture_default_str();
    walk_cmd->add_option("--start", walk.start, "Starting site")->capture_default_str();
    walk_cmd->add_option("--left", walk.left, "Initial L amplitude, 're' or 're,im' (normalized with --right)")
        ->capture_default_str();
    walk_cmd->add_option("--right", walk.right, "Initial R amplitude")->capture_default_str();

    BoundedOptions bounded;
    CLI::App *bounded_cmd = app.add_subcommand("bounded", "Classify boundedness of the rotation walk and verify it");
    add_common(bounded_cmd, bounded.common);
    bounded_cmd->add_option("--k", bounded.k, "Rotation period parameter")->required();
    bounded_cmd->add_option("--start", bounded.start, "Starting site")->capture_default_str();
    bounded_cmd->add_option("--steps", bounded.steps, "Steps of support verification")->capture_default_str();
    bounded_cmd->add_option("--radius", bounded.radius, "Scan radius (default 4k)");
    bounded_cmd->add_option("--assume-bounds", bounded.assume_bounds, "Verify these bounds instead: LOWER UPPER")
        ->expected(2);

    SpectralOptions spectral;
    CLI::App *spectral_cmd = app.add_subcommand("spectral", "Bloch bands, group velocities and asymptotic moments");
    add_common(spectral_cmd, spectral.common);
    add_coin_options(spectral_cmd, spectral.coin, true);
    spectral_cmd->add_option("--grid", spectral.grid, "Quasi-momentum grid size")->capture_default_str();
    spectral_cmd->add_option("--start", spectral.start, "Starting site")->capture_default_str();
    spectral_cmd->add_option("--left", spectral.left, "Initial L amplitude")->capture_default_str();
    spectral_cmd->add_option("--right", spectral.right, "Initial R amplitude")->capture_default_str();
    spectral_cmd->add_flag("--strict", spectral.strict, "Exit 4 on ambiguous band matching or indeterminate order");

    DROptions dr;
    CLI::App *dr_cmd = app.add_subcommand("dr", "Double-reflection walks versus two-step coin walks");
    add_common(dr_cmd, dr.common);
    dr_cmd->add_option("--shift", dr.shift, "Shift convention")
        ->check(CLI::IsMember({"standard", "flip"}))
        ->capture_default_str();
    dr_cmd->add_option("--specs", dr.specs, "Random DR specs for the embedding check")->capture_default_str();
    dr_cmd->add_option("--states", dr.states, "Random states per spec")->capture_default_str();
    dr_cmd->add_option("--realness-trials", dr.realness_trials, "Random specs for the witness check")
        ->capture_default_str();
    dr_cmd->add_option("--seed", dr.seed, "RNG seed")->capture_default_str();
    dr_cmd->add_option("--tolerance", dr.tolerance, "Agreement and realness tolerance")->capture_default_str();

    PolyaOptions polya;
    CLI::App *polya_cmd = app.add_subcommand("polya", "Quantum Polya urn and the classical urn");
    add_common(polya_cmd, polya.common);
    polya_cmd->add_option("--r0", polya.r0, "Initial red balls")->capture_default_str();
    polya_cmd->add_option("--b0", polya.b0, "Initial black balls")->capture_default_str();
    polya_cmd->add_option("--steps", polya.steps, "Steps for the r distribution")->capture_default_str();
    polya_cmd->add_option("--series-steps", polya.series_steps, "Steps for the sigma/t series")->capture_default_str();
    polya_cmd->add_option("--samples", polya.samples, "Classical Monte Carlo samples")->capture_default_str();
    polya_cmd->add_option("--classical-steps", polya.classical_steps, "Draws per classical sample")
        ->capture_default_str();
    polya_cmd->add_option("--bins", polya.bins, "Histogram bins for X")->capture_default_str();
    polya_cmd->add_option("--seed", polya.seed, "RNG seed")->capture_default_str();
    polya_cmd->add_option("--red", polya.red, "Initial R chirality amplitude")->capture_default_str();
    polya_cmd->add_option("--black", polya.black, "Initial B chirality amplitude")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (walk_cmd->parsed()) return cmd_walk(walk, out);
        if (bounded_cmd->parsed()) return cmd_bounded(bounded, out);
        if (spectral_cmd->parsed()) return cmd_spectral(spectral, out);
        if (dr_cmd->parsed()) return cmd_dr(dr, out);
        if (polya_cmd->parsed()) return cmd_polya(polya, out);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace qwalk::cli
