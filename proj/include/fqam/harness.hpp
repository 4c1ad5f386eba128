#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fqam/cgg.hpp"
#include "fqam/network.hpp"
#include "fqam/stochgeo.hpp"
#include "fqam/turbo.hpp"

namespace fqam {

constexpr const char* kCsvSchemaLine = "# schema=1";
constexpr double kLlrClamp = 30.0;

enum class ExperimentKind { BerFer, IciHist, SinrCdf };
enum class SchemeSelect { Fqam, Qam, Both };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::BerFer;
    std::uint64_t seed = 1;
    int workers = 1;

    // [modulation]
    SchemeSelect scheme = SchemeSelect::Both;
    int mf = 4;
    int q = 4;
    int baseline_q = 2; // QAM order of the parity baseline

    // [network]
    int n_bs = 3;
    double isd = 50.0;
    double pathloss_exp = 3.0;
    double tx_power = 1.0;

    // [ofdm]
    int n_s = 1024;
    int cp = 72;

    // [turbo]
    int block_length = 1024;
    int iterations = 8;

    // [sweep]
    double snr_db_min = 0.0;
    double snr_db_max = 10.0;
    double snr_db_step = 2.0;

    // [stopping]
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 10000;

    // [ici]
    std::size_t ici_samples = 100000;
    int ici_bins = 101;
    std::vector<int> ici_n_bs_list = {3, 7, 19, 37, 61};
    bool ici_include_control = true;

    // [sinr]
    SinrModel sinr;
    std::size_t sinr_draws = 100000;
    double sinr_window_radius = 2000.0;

    std::vector<double> sweep_points() const {
        std::vector<double> pts;
        for (double v = snr_db_min; v <= snr_db_max + 1e-9; v += snr_db_step) pts.push_back(v);
        return pts;
    }

    // FQAM bits per frequency component vs the QAM baseline.
    double fqam_bits_per_component() const {
        return (int_log2(static_cast<unsigned>(mf)) + int_log2(static_cast<unsigned>(q))) /
               static_cast<double>(mf);
    }
    double qam_bits_per_component() const { return int_log2(static_cast<unsigned>(baseline_q)); }
};

struct ConfigError : std::runtime_error {
    std::vector<std::string> issues;
    explicit ConfigError(std::vector<std::string> iss)
        : std::runtime_error(join(iss)), issues(std::move(iss)) {}
    static std::string join(const std::vector<std::string>& iss) {
        std::string s = "config validation failed:";
        for (const auto& i : iss) s += "\n  - " + i;
        return s;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

inline RawConfig parse_ini(std::istream& in, std::vector<std::string>& issues) {
    RawConfig raw;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                issues.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            raw[section]; // section may be empty of keys
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) {
            issues.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        if (raw[section].count(key))
            issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        raw[section][key] = val;
    }
    return raw;
}

class ConfigReader {
  public:
    ConfigReader(RawConfig raw, std::vector<std::string>& issues) : raw_(std::move(raw)), issues_(issues) {}

    bool has(const std::string& sec, const std::string& key) {
        auto s = raw_.find(sec);
        return s != raw_.end() && s->second.count(key) > 0;
    }

    std::string get(const std::string& sec, const std::string& key) {
        consumed_[sec].insert(key);
        return raw_[sec][key];
    }

    template <class T>
    void read(const std::string& sec, const std::string& key, T& out) {
        if (!has(sec, key)) return;
        std::istringstream ss(get(sec, key));
        T v{};
        ss >> v;
        if (ss.fail()) issues_.push_back(field(sec, key) + ": cannot parse '" + raw_[sec][key] + "'");
        else out = v;
    }

    void read_bool(const std::string& sec, const std::string& key, bool& out) {
        if (!has(sec, key)) return;
        const std::string v = get(sec, key);
        if (v == "true" || v == "1") out = true;
        else if (v == "false" || v == "0") out = false;
        else issues_.push_back(field(sec, key) + ": expected true/false");
    }

    void read_int_list(const std::string& sec, const std::string& key, std::vector<int>& out) {
        if (!has(sec, key)) return;
        std::vector<int> vals;
        std::istringstream ss(get(sec, key));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                vals.push_back(std::stoi(trim(tok)));
            } catch (...) {
                issues_.push_back(field(sec, key) + ": bad integer '" + trim(tok) + "'");
                return;
            }
        }
        out = vals;
    }

    void reject_unknown() {
        for (const auto& [sec, keys] : raw_) {
            if (!known_sections_.count(sec)) {
                issues_.push_back("unknown section [" + sec + "]");
                continue;
            }
            for (const auto& [key, _] : keys)
                if (!consumed_[sec].count(key)) issues_.push_back(field(sec, key) + ": unknown key");
        }
    }

    void known_section(const std::string& s) { known_sections_.insert(s); }

    static std::string field(const std::string& sec, const std::string& key) {
        return sec.empty() ? key : "[" + sec + "] " + key;
    }

  private:
    RawConfig raw_;
    std::vector<std::string>& issues_;
    std::map<std::string, std::set<std::string>> consumed_;
    std::set<std::string> known_sections_;
};

} // namespace detail

inline ExperimentConfig parse_config_stream(std::istream& in) {
    std::vector<std::string> issues;
    detail::ConfigReader r(detail::parse_ini(in, issues), issues);
    ExperimentConfig cfg;

    for (const char* s : {"", "modulation", "network", "ofdm", "turbo", "sweep", "stopping", "ici", "sinr"})
        r.known_section(s);

    if (r.has("", "kind")) {
        const std::string k = r.get("", "kind");
        if (k == "ber_fer") cfg.kind = ExperimentKind::BerFer;
        else if (k == "ici_hist") cfg.kind = ExperimentKind::IciHist;
        else if (k == "sinr_cdf") cfg.kind = ExperimentKind::SinrCdf;
        else issues.push_back("kind: expected ber_fer | ici_hist | sinr_cdf");
    } else {
        issues.push_back("kind: required");
    }
    r.read("", "seed", cfg.seed);
    r.read("", "workers", cfg.workers);

    if (r.has("modulation", "scheme")) {
        const std::string s = r.get("modulation", "scheme");
        if (s == "fqam") cfg.scheme = SchemeSelect::Fqam;
        else if (s == "qam") cfg.scheme = SchemeSelect::Qam;
        else if (s == "both") cfg.scheme = SchemeSelect::Both;
        else issues.push_back("[modulation] scheme: expected fqam | qam | both");
    }
    r.read("modulation", "mf", cfg.mf);
    r.read("modulation", "q", cfg.q);
    r.read("modulation", "baseline_q", cfg.baseline_q);

    r.read("network", "n_bs", cfg.n_bs);
    r.read("network", "isd", cfg.isd);
    r.read("network", "pathloss_exp", cfg.pathloss_exp);
    r.read("network", "tx_power", cfg.tx_power);

    r.read("ofdm", "n_s", cfg.n_s);
    r.read("ofdm", "cp", cfg.cp);

    r.read("turbo", "block_length", cfg.block_length);
    r.read("turbo", "iterations", cfg.iterations);

    r.read("sweep", "snr_db_min", cfg.snr_db_min);
    r.read("sweep", "snr_db_max", cfg.snr_db_max);
    r.read("sweep", "snr_db_step", cfg.snr_db_step);

    r.read("stopping", "min_frame_errors", cfg.min_frame_errors);
    r.read("stopping", "max_frames", cfg.max_frames);

    r.read("ici", "n_samples", cfg.ici_samples);
    r.read("ici", "bins", cfg.ici_bins);
    r.read_int_list("ici", "n_bs_list", cfg.ici_n_bs_list);
    r.read_bool("ici", "include_control", cfg.ici_include_control);

    r.read("sinr", "lambda", cfg.sinr.lambda);
    r.read("sinr", "n_f", cfg.sinr.n_f);
    r.read("sinr", "pathloss_exp", cfg.sinr.pathloss_exp);
    r.read("sinr", "d", cfg.sinr.d);
    r.read("sinr", "n0_dbm_hz", cfg.sinr.n0_dbm_hz);
    r.read("sinr", "w_sc", cfg.sinr.w_sc_hz);
    r.read("sinr", "p_t", cfg.sinr.p_t_w);
    r.read("sinr", "draws", cfg.sinr_draws);
    r.read("sinr", "window_radius", cfg.sinr_window_radius);

    r.reject_unknown();

    // semantic validation
    if (!is_power_of_two(static_cast<unsigned>(cfg.mf)))
        issues.push_back("[modulation] mf: must be a power of two, got " + std::to_string(cfg.mf));
    if (cfg.q != 2 && cfg.q != 4 && cfg.q != 16)
        issues.push_back("[modulation] q: supported QAM orders are 2, 4, 16");
    if (cfg.baseline_q != 2 && cfg.baseline_q != 4 && cfg.baseline_q != 16)
        issues.push_back("[modulation] baseline_q: supported QAM orders are 2, 4, 16");
    static const std::set<int> kLayouts = {1, 3, 7, 19, 37, 61};
    if (!kLayouts.count(cfg.n_bs))
        issues.push_back("[network] n_bs: supported hex layouts are 1, 3, 7, 19, 37, 61; got " +
                         std::to_string(cfg.n_bs));
    for (int nb : cfg.ici_n_bs_list)
        if (!kLayouts.count(nb))
            issues.push_back("[ici] n_bs_list: supported layouts are 1, 3, 7, 19, 37, 61; got " +
                             std::to_string(nb));
    if (!is_power_of_two(static_cast<unsigned>(cfg.n_s)))
        issues.push_back("[ofdm] n_s: must be a power of two");
    if (cfg.cp < 0) issues.push_back("[ofdm] cp: must be >= 0");
    if (is_power_of_two(static_cast<unsigned>(cfg.mf)) && cfg.n_s % cfg.mf != 0)
        issues.push_back("[ofdm] n_s: must be divisible by mf");
    if (cfg.block_length < 1) issues.push_back("[turbo] block_length: must be >= 1");
    if (cfg.iterations < 1) issues.push_back("[turbo] iterations: must be >= 1");
    if (cfg.snr_db_step <= 0.0) issues.push_back("[sweep] snr_db_step: must be > 0");
    if (cfg.workers < 1) issues.push_back("workers: must be >= 1");
    if (cfg.kind == ExperimentKind::BerFer && cfg.scheme == SchemeSelect::Both &&
        issues.empty() && cfg.fqam_bits_per_component() != cfg.qam_bits_per_component()) {
        std::ostringstream ss;
        ss << "spectral efficiency mismatch: FQAM (" << cfg.mf << "," << cfg.q << ") carries "
           << cfg.fqam_bits_per_component() << " bit/component but baseline Q=" << cfg.baseline_q
           << " carries " << cfg.qam_bits_per_component()
           << "; adjust baseline_q so the comparison is fair";
        issues.push_back(ss.str());
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

inline ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    return parse_config_stream(in);
}

// ---------------------------------------------------------------------------
// BER / FER sweeps
// ---------------------------------------------------------------------------

struct ResultRow {
    double snr_db = 0.0;
    double es_n0_active_db = 0.0;
    std::string scheme;
    std::uint64_t bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frames = 0;
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double mean_alpha = 0.0;
    double mean_beta = 0.0;
    double wall_s = 0.0;
};

namespace detail {

struct FrameOutcome {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
    double alpha_sum = 0.0;
    double beta_sum = 0.0;
    int ofdm_symbols = 0;
};

struct SchemeContext {
    std::string name;
    FqamSpec spec;
    OfdmConfig ofdm;
    TurboConfig turbo;
    std::vector<std::size_t> chan_interleaver;
    NetworkLayout layout;
    int n_ofdm = 0;     // OFDM symbols per frame
    int total_bits = 0; // interleaved payload size (codeword + padding)
    std::uint64_t scheme_id = 0;
};

inline SchemeContext make_scheme_context(const ExperimentConfig& cfg, Scheme scheme) {
    SchemeContext ctx;
    ctx.scheme_id = scheme == Scheme::Fqam ? 1 : 2;
    ctx.name = scheme == Scheme::Fqam ? "fqam" : "qam";
    ctx.spec = scheme == Scheme::Fqam ? FqamSpec::make(cfg.mf, cfg.q)
                                      : FqamSpec::make(1, cfg.baseline_q);
    ctx.ofdm = OfdmConfig::make(cfg.n_s, cfg.cp, ctx.spec.mf);
    ctx.turbo = TurboConfig::make(cfg.block_length, cfg.iterations);
    const int bits_per_ofdm = ctx.ofdm.groups() * ctx.spec.bits_per_symbol();
    ctx.n_ofdm = (ctx.turbo.codeword_length() + bits_per_ofdm - 1) / bits_per_ofdm;
    ctx.total_bits = ctx.n_ofdm * bits_per_ofdm;
    ctx.chan_interleaver =
        make_permutation(static_cast<std::size_t>(ctx.total_bits), cfg.seed ^ 0xc4a71ull);
    NetworkLayout lay = hex_layout(cfg.n_bs, cfg.isd);
    lay.tx_power_w = cfg.tx_power;
    lay.pathloss_exponent = cfg.pathloss_exp;
    ctx.layout = place_ue_cell_edge(lay);
    return ctx;
}

inline FrameOutcome simulate_frame(const SchemeContext& ctx, double noise_power,
                                   std::uint64_t seed, std::uint64_t point_idx,
                                   std::uint64_t frame_idx) {
    Rng rng = Rng::stream(seed, {ctx.scheme_id, point_idx, frame_idx});
    const auto k = static_cast<std::size_t>(ctx.turbo.block_length);

    BitVec info(k);
    for (auto& b : info) b = rng.bit();
    const BitVec coded = turbo_encode(info, ctx.turbo);

    BitVec payload(static_cast<std::size_t>(ctx.total_bits), 0);
    std::copy(coded.begin(), coded.end(), payload.begin());
    const BitVec tx_bits = permute(payload, ctx.chan_interleaver);

    FrameOutcome out;
    out.ofdm_symbols = ctx.n_ofdm;
    std::vector<double> llrs;
    llrs.reserve(static_cast<std::size_t>(ctx.total_bits));
    const int bps = ctx.spec.bits_per_symbol();
    std::vector<FqamSymbol> syms(static_cast<std::size_t>(ctx.ofdm.groups()));
    BitVec symbits(static_cast<std::size_t>(bps));
    for (int o = 0; o < ctx.n_ofdm; ++o) {
        const std::size_t base = static_cast<std::size_t>(o) *
                                 static_cast<std::size_t>(ctx.ofdm.groups() * bps);
        for (int g = 0; g < ctx.ofdm.groups(); ++g) {
            std::copy_n(tx_bits.begin() + static_cast<std::ptrdiff_t>(base) + g * bps,
                        bps, symbits.begin());
            syms[static_cast<std::size_t>(g)] = map_bits(symbits, ctx.spec);
        }
        const FreqGrid grid = assemble_grid(syms, ctx.spec, ctx.ofdm);
        const ChannelRealization ch = draw_channels(ctx.layout, ctx.ofdm.n_subcarriers, rng);
        std::vector<FreqGrid> intf;
        intf.reserve(static_cast<std::size_t>(ctx.layout.n_bs() - 1));
        for (int a = 1; a < ctx.layout.n_bs(); ++a)
            intf.push_back(random_fqam_grid(ctx.spec, ctx.ofdm, rng));
        const RxObservation rx = synthesize_rx(grid, intf, ch, ctx.layout, noise_power, rng);
        const DetectionResult det = detect_frame(rx.omega, rx.serving_h, ctx.spec);
        out.alpha_sum += det.params.alpha;
        out.beta_sum += det.params.beta;
        llrs.insert(llrs.end(), det.llrs.begin(), det.llrs.end());
    }

    std::vector<double> deintl = unpermute(llrs, ctx.chan_interleaver);
    deintl.resize(static_cast<std::size_t>(ctx.turbo.codeword_length()));
    for (auto& v : deintl) v = std::clamp(v, -kLlrClamp, kLlrClamp);
    const TurboDecodeResult dec = turbo_decode(deintl, ctx.turbo);
    for (std::size_t i = 0; i < k; ++i) out.bit_errors += dec.bits[i] != info[i];
    out.frame_error = out.bit_errors > 0;
    return out;
}

inline ResultRow run_sweep_point(const ExperimentConfig& cfg, const SchemeContext& ctx,
                                 std::uint64_t point_idx, double snr_db) {
    const auto t0 = std::chrono::steady_clock::now();
    const double p_rx = ctx.layout.tx_power_w *
                        std::pow(ctx.layout.serving_distance(), -ctx.layout.pathloss_exponent);
    const double noise_power = p_rx / db_to_linear(snr_db);

    ResultRow row;
    row.snr_db = snr_db;
    row.es_n0_active_db = snr_db + linear_to_db(ctx.spec.mf);
    row.scheme = ctx.name;
    double alpha_sum = 0.0, beta_sum = 0.0;
    std::uint64_t ofdm_count = 0;

    constexpr std::uint64_t kChunk = 64;
    std::uint64_t frames_done = 0;
    while (true) {
        const std::uint64_t chunk = std::min(kChunk, cfg.max_frames - frames_done);
        if (chunk == 0) break;
        std::vector<FrameOutcome> results(chunk);
        const int nw = std::min<int>(cfg.workers, static_cast<int>(chunk));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t i = static_cast<std::uint64_t>(w); i < chunk;
                     i += static_cast<std::uint64_t>(nw))
                    results[i] = simulate_frame(ctx, noise_power, cfg.seed, point_idx,
                                                frames_done + i);
            });
        for (auto& t : pool) t.join();
        // fixed-order reduction keeps results bit-identical across worker counts
        for (const FrameOutcome& r : results) {
            row.bit_errors += r.bit_errors;
            row.frame_errors += r.frame_error ? 1 : 0;
            alpha_sum += r.alpha_sum;
            beta_sum += r.beta_sum;
            ofdm_count += static_cast<std::uint64_t>(r.ofdm_symbols);
        }
        frames_done += chunk;
        if (row.frame_errors >= cfg.min_frame_errors || frames_done >= cfg.max_frames) break;
    }
    row.frames = frames_done;
    row.bits = frames_done * static_cast<std::uint64_t>(cfg.block_length);
    row.ber = static_cast<double>(row.bit_errors) / static_cast<double>(row.bits);
    row.fer = static_cast<double>(row.frame_errors) / static_cast<double>(row.frames);
    row.mean_alpha = alpha_sum / static_cast<double>(ofdm_count);
    row.mean_beta = beta_sum / static_cast<double>(ofdm_count);
    row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

} // namespace detail

inline std::vector<ResultRow> run_ber_fer(const ExperimentConfig& cfg) {
    std::vector<Scheme> schemes;
    if (cfg.scheme != SchemeSelect::Qam) schemes.push_back(Scheme::Fqam);
    if (cfg.scheme != SchemeSelect::Fqam) schemes.push_back(Scheme::Qam);
    if (cfg.scheme == SchemeSelect::Both &&
        cfg.fqam_bits_per_component() != cfg.qam_bits_per_component())
        throw ConfigError({"spectral efficiency mismatch between FQAM and QAM baseline"});

    std::vector<ResultRow> rows;
    for (Scheme s : schemes) {
        const detail::SchemeContext ctx = detail::make_scheme_context(cfg, s);
        const auto pts = cfg.sweep_points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            rows.push_back(detail::run_sweep_point(cfg, ctx, i, pts[i]));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// ICI histogram study
// ---------------------------------------------------------------------------

struct IciCaseResult {
    std::string label; // "nbs3", ..., "control"
    Histogram hist;    // of normalized real parts
    double variance = 0.0;
    double excess_kurtosis = 0.0;
};

struct IciHistResult {
    std::vector<IciCaseResult> cases;
    std::vector<double> gaussian_ref; // normal pdf at bin centers
    double bin_lo = -6.0, bin_hi = 6.0;
};

inline IciHistResult run_ici_hist(const ExperimentConfig& cfg) {
    const FqamSpec spec = FqamSpec::make(cfg.mf, cfg.q);
    const OfdmConfig ofdm = OfdmConfig::make(cfg.n_s, cfg.cp, cfg.mf);
    const double noise_power = cfg.sinr.noise_power_per_component();
    IciHistResult out;

    auto run_case = [&](int n_bs, InterfererSignal kind, const std::string& label,
                        std::uint64_t stream) {
        NetworkLayout lay = hex_layout(n_bs, cfg.isd);
        lay.tx_power_w = cfg.tx_power;
        lay.pathloss_exponent = cfg.pathloss_exp;
        lay = place_ue_cell_edge(lay);
        Rng rng = Rng::stream(cfg.seed, {0xAC1ull, stream});
        const IciSampleSummary s =
            collect_ici_samples(lay, spec, ofdm, cfg.ici_samples, kind, noise_power, rng);
        IciCaseResult c;
        c.label = label;
        c.variance = s.raw_variance;
        c.excess_kurtosis = s.excess_kurtosis;
        c.hist = make_histogram(s.samples, out.bin_lo, out.bin_hi, cfg.ici_bins);
        out.cases.push_back(std::move(c));
    };

    std::uint64_t stream = 0;
    for (int nb : cfg.ici_n_bs_list)
        run_case(nb, InterfererSignal::Fqam, "nbs" + std::to_string(nb), stream++);
    if (cfg.ici_include_control) run_case(3, InterfererSignal::GaussianControl, "control", stream++);

    const double w = (out.bin_hi - out.bin_lo) / cfg.ici_bins;
    for (int i = 0; i < cfg.ici_bins; ++i) {
        const double x = out.bin_lo + (i + 0.5) * w;
        out.gaussian_ref.push_back(std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SINR CDF comparison
// ---------------------------------------------------------------------------

struct SinrCdfResult {
    CdfCurve cf_fqam, cf_qam; // closed form
    CdfCurve mc_fqam, mc_qam; // empirical, same grid
    double ks_fqam = 0.0, ks_qam = 0.0;
    double median_cf_fqam_db = 0.0, median_cf_qam_db = 0.0;
    double median_mc_fqam_db = 0.0, median_mc_qam_db = 0.0;
};

inline SinrCdfResult run_sinr_cdf(const ExperimentConfig& cfg) {
    cfg.sinr.validate();
    const std::vector<double> grid = default_sinr_grid();
    SinrCdfResult res;
    res.cf_fqam = curve(cfg.sinr, Scheme::Fqam, grid);
    res.cf_qam = curve(cfg.sinr, Scheme::Qam, grid);
    res.median_cf_fqam_db = sinr_cdf_median_db(cfg.sinr, Scheme::Fqam);
    res.median_cf_qam_db = sinr_cdf_median_db(cfg.sinr, Scheme::Qam);

    auto empirical = [&](Scheme s, std::uint64_t stream, double& ks, double& median_db) {
        Rng rng = Rng::stream(cfg.seed, {0x51ull, stream});
        std::vector<double> samples =
            mc_sinr_samples(cfg.sinr, s, cfg.sinr_draws, cfg.sinr_window_radius, rng);
        ks = ks_vs_closed_form(samples, cfg.sinr, s);
        std::sort(samples.begin(), samples.end());
        median_db = linear_to_db(median_of_sorted(samples));
        CdfCurve c;
        c.sinr_db = grid;
        c.prob.reserve(grid.size());
        for (double db : grid) {
            const double thr = db_to_linear(db);
            const auto it = std::upper_bound(samples.begin(), samples.end(), thr);
            c.prob.push_back(static_cast<double>(it - samples.begin()) /
                             static_cast<double>(samples.size()));
        }
        return c;
    };
    res.mc_fqam = empirical(Scheme::Fqam, 1, res.ks_fqam, res.median_mc_fqam_db);
    res.mc_qam = empirical(Scheme::Qam, 2, res.ks_qam, res.median_mc_qam_db);
    return res;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

inline void write_result_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kCsvSchemaLine << "\n";
    os << "snr_db,es_n0_active_db,scheme,bits,bit_errors,frames,frame_errors,ber,fer,"
          "mean_alpha,mean_beta,wall_s\n";
    for (const auto& r : rows)
        os << r.snr_db << ',' << r.es_n0_active_db << ',' << r.scheme << ',' << r.bits << ','
           << r.bit_errors << ',' << r.frames << ',' << r.frame_errors << ',' << r.ber << ','
           << r.fer << ',' << r.mean_alpha << ',' << r.mean_beta << ',' << r.wall_s << "\n";
}

inline void write_curve_csv(std::ostream& os, const CdfCurve& c) {
    os << kCsvSchemaLine << "\n";
    os << "sinr_db,probability\n";
    for (std::size_t i = 0; i < c.sinr_db.size(); ++i)
        os << c.sinr_db[i] << ',' << c.prob[i] << "\n";
}

inline void write_ici_hist_csv(std::ostream& os, const IciHistResult& r) {
    os << kCsvSchemaLine << "\n";
    os << "bin_center";
    for (const auto& c : r.cases) os << ",density_" << c.label;
    os << ",gaussian_ref\n";
    if (r.cases.empty()) return;
    const auto& centers = r.cases.front().hist.centers;
    const double w = (r.bin_hi - r.bin_lo) / static_cast<double>(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        os << centers[i];
        for (const auto& c : r.cases)
            os << ',' << static_cast<double>(c.hist.counts[i]) /
                          (static_cast<double>(c.hist.total) * w);
        os << ',' << r.gaussian_ref[i] << "\n";
    }
}

inline void write_ici_kurtosis_csv(std::ostream& os, const IciHistResult& r) {
    os << kCsvSchemaLine << "\n";
    os << "case,variance,excess_kurtosis\n";
    for (const auto& c : r.cases)
        os << c.label << ',' << c.variance << ',' << c.excess_kurtosis << "\n";
}

inline void write_samples_csv(std::ostream& os, const std::vector<double>& samples) {
    os << kCsvSchemaLine << "\n";
    os << "value\n";
    for (double v : samples) os << v << "\n";
}

} // namespace fqam
