#include <catch_amalgamated.hpp>

#include <sstream>

#include "fqam/harness.hpp"

using namespace fqam;

namespace {

ExperimentConfig parse_str(const std::string& s) {
    std::istringstream in(s);
    return parse_config_stream(in);
}

std::vector<std::string> issues_of(const std::string& s) {
    try {
        parse_str(s);
    } catch (const ConfigError& e) {
        return e.issues;
    }
    return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    for (const auto& i : issues)
        if (i.find(needle) != std::string::npos) return true;
    return false;
}

} // namespace

TEST_CASE("parse_config: minimal valid file fills defaults") {
    const auto cfg = parse_str("kind = ber_fer\n");
    CHECK(cfg.kind == ExperimentKind::BerFer);
    CHECK(cfg.mf == 4);
    CHECK(cfg.q == 4);
    CHECK(cfg.n_bs == 3);
    CHECK(cfg.n_s == 1024);
    CHECK(cfg.block_length == 1024);
    CHECK(cfg.min_frame_errors == 100);
    CHECK(cfg.seed == 1);
}

TEST_CASE("parse_config: kind is required") {
    CHECK(mentions(issues_of("seed = 3\n"), "kind"));
}

TEST_CASE("parse_config: mf must be a power of two, named in the error") {
    const auto iss = issues_of("kind = ber_fer\n[modulation]\nmf = 3\n");
    REQUIRE_FALSE(iss.empty());
    CHECK(mentions(iss, "mf"));
    CHECK(mentions(iss, "power of two"));
}

TEST_CASE("parse_config: unsupported n_bs lists the supported layouts") {
    const auto iss = issues_of("kind = ber_fer\n[network]\nn_bs = 5\n");
    REQUIRE_FALSE(iss.empty());
    CHECK(mentions(iss, "n_bs"));
    CHECK(mentions(iss, "1, 3, 7, 19, 37, 61"));
}

TEST_CASE("parse_config: unknown keys and sections are rejected") {
    CHECK(mentions(issues_of("kind = ber_fer\nbogus = 1\n"), "unknown key"));
    CHECK(mentions(issues_of("kind = ber_fer\n[nosuch]\nx = 1\n"), "unknown section"));
}

TEST_CASE("parse_config: multiple problems reported at once") {
    const auto iss = issues_of("kind = nope\n[modulation]\nmf = 3\n[network]\nn_bs = 5\n");
    CHECK(iss.size() >= 3);
}

TEST_CASE("parse_config: spectral efficiency parity enforced for comparisons") {
    // (4,4)-FQAM is 1 bit/component; a QPSK baseline would be 2
    const auto iss =
        issues_of("kind = ber_fer\n[modulation]\nscheme = both\nbaseline_q = 4\n");
    REQUIRE_FALSE(iss.empty());
    CHECK(mentions(iss, "spectral efficiency"));
    // single-scheme runs are not constrained
    CHECK_NOTHROW(parse_str("kind = ber_fer\n[modulation]\nscheme = fqam\nbaseline_q = 4\n"));
}

TEST_CASE("parse_config: missing file is a distinct error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("run_ber_fer: deterministic across worker counts, stopping rule sound") {
    const std::string tail = "kind = ber_fer\n"
                             "seed = 99\n"
                             "[modulation]\nscheme = both\n"
                             "[ofdm]\nn_s = 64\ncp = 8\n"
                             "[turbo]\nblock_length = 40\niterations = 4\n"
                             "[network]\nn_bs = 3\n"
                             "[sweep]\nsnr_db_min = 0\nsnr_db_max = 4\nsnr_db_step = 4\n"
                             "[stopping]\nmin_frame_errors = 5\nmax_frames = 40\n";
    auto cfg1 = parse_str("workers = 1\n" + tail);
    auto cfg8 = parse_str("workers = 8\n" + tail);
    const auto r1 = run_ber_fer(cfg1);
    const auto r8 = run_ber_fer(cfg8);
    REQUIRE(r1.size() == r8.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].scheme == r8[i].scheme);
        CHECK(r1[i].bits == r8[i].bits);
        CHECK(r1[i].bit_errors == r8[i].bit_errors);
        CHECK(r1[i].frames == r8[i].frames);
        CHECK(r1[i].frame_errors == r8[i].frame_errors);
        CHECK(r1[i].ber == r8[i].ber);
        CHECK(r1[i].mean_alpha == r8[i].mean_alpha);
        CHECK(r1[i].mean_beta == r8[i].mean_beta);
        // stopping rule: enough frame errors or the frame cap
        CHECK((r1[i].frame_errors >= 5 || r1[i].frames >= 40));
        CHECK(r1[i].ber == static_cast<double>(r1[i].bit_errors) / r1[i].bits);
        CHECK(r1[i].fer == static_cast<double>(r1[i].frame_errors) / r1[i].frames);
    }
}

TEST_CASE("run_ici_hist: control case matches the normal distribution") {
    auto cfg = parse_str("kind = ici_hist\n"
                         "seed = 7\n"
                         "[ofdm]\nn_s = 256\ncp = 16\n"
                         "[ici]\nn_samples = 30000\nn_bs_list = 3\n");
    const auto res = run_ici_hist(cfg);
    REQUIRE(res.cases.size() == 2); // nbs3 + control
    const auto& fq = res.cases[0];
    const auto& ctl = res.cases[1];
    CHECK(fq.label == "nbs3");
    CHECK(ctl.label == "control");
    CHECK(fq.excess_kurtosis > 0.5);
    CHECK(std::abs(ctl.excess_kurtosis) < 0.15);

    // center peak of the FQAM histogram exceeds the Gaussian reference
    const auto& centers = fq.hist.centers;
    const std::size_t mid = centers.size() / 2;
    const double w = (res.bin_hi - res.bin_lo) / static_cast<double>(centers.size());
    const double fq_density =
        static_cast<double>(fq.hist.counts[mid]) / (static_cast<double>(fq.hist.total) * w);
    CHECK(fq_density > res.gaussian_ref[mid]);

    // chi-squared goodness of fit for the control case
    double stat = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double expect = res.gaussian_ref[i] * w * static_cast<double>(ctl.hist.total);
        if (expect < 5.0) continue;
        const double diff = static_cast<double>(ctl.hist.counts[i]) - expect;
        stat += diff * diff / expect;
        ++used;
    }
    CHECK(chi2_sf(stat, used - 1) > 0.01);
}

TEST_CASE("run_sinr_cdf: curves emitted, dominance and KS sanity") {
    auto cfg = parse_str("kind = sinr_cdf\nseed = 11\n[sinr]\ndraws = 20000\n");
    const auto res = run_sinr_cdf(cfg);
    REQUIRE(res.cf_fqam.prob.size() == res.mc_fqam.prob.size());
    CHECK(res.ks_fqam < 0.03);
    CHECK(res.ks_qam < 0.03);
    CHECK(res.median_cf_fqam_db > res.median_cf_qam_db);
    for (std::size_t i = 0; i < res.cf_fqam.prob.size(); ++i)
        CHECK(res.cf_fqam.prob[i] <= res.cf_qam.prob[i]);
}

TEST_CASE("CSV writers emit the schema line and headers") {
    std::ostringstream os;
    write_result_rows_csv(os, {});
    const std::string s = os.str();
    CHECK(s.rfind(kCsvSchemaLine, 0) == 0);
    CHECK(s.find("snr_db,") != std::string::npos);

    std::ostringstream os2;
    CdfCurve c;
    c.sinr_db = {0.0, 1.0};
    c.prob = {0.1, 0.2};
    write_curve_csv(os2, c);
    CHECK(os2.str().find("sinr_db,probability") != std::string::npos);
}
