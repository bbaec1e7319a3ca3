#include <cmath>
#include <random>

#include "aerosense/energy.hpp"
#include "aerosense/errors.hpp"
#include "doctest.h"

using namespace aerosense;

TEST_CASE("break-even ratios come straight from the overhead") {
    // becr = 1 / (1 - overhead), exact by construction.
    CHECK(*becr(EnergyProfile::from_overhead(0.21875)) ==
          doctest::Approx(1.28).epsilon(1e-12));
    CHECK(*becr(EnergyProfile::from_overhead(0.3151)) ==
          doctest::Approx(1.4600672).epsilon(1e-6));
    CHECK(*becr(EnergyProfile::from_overhead(0.2593)) ==
          doctest::Approx(1.3500743).epsilon(1e-6));
    CHECK_FALSE(becr(EnergyProfile::from_overhead(1.0)).has_value());
    CHECK_FALSE(becr(EnergyProfile::from_overhead(1.7)).has_value());
}

TEST_CASE("published savings reproduce within their tolerances") {
    struct Row {
        double overhead, cr, pes_pct, tol_pp;
    };
    // Small-turbine profile rows, then the large-turbine ones.
    for (const Row& row : {Row{0.21875, 2.12, 30.9, 0.5},
                           Row{0.3151, 4.024, 43.9, 0.5},
                           Row{0.2593, 4.0, 49.0, 0.2},
                           Row{0.0673, 2.12, 46.1, 0.5},
                           Row{0.0945, 4.024, 65.7, 0.5},
                           Row{0.0790, 4.0, 67.1, 0.5}}) {
        auto profile = EnergyProfile::from_overhead(row.overhead);
        CHECK(std::abs(pes(profile, row.cr) * 100.0 - row.pes_pct) <= row.tol_pp);
    }
}

TEST_CASE("saving identity matches the raw energy ledger") {
    // pes == (E_raw - E_compressed) / E_raw for any profile and ratio.
    std::mt19937_64 rng(13);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * double(rng() % 100000) / 100000.0;
    };
    for (int i = 0; i < 1000; ++i) {
        EnergyProfile profile{uniform(0.001, 0.5), uniform(1e4, 1e7),
                              uniform(0.01, 1.0), uniform(1e4, 1e7)};
        double cr = uniform(1.01, 50.0);
        double bits = uniform(1e3, 1e9);
        double raw = energy_no_compression(profile, bits);
        double compressed = energy_with_compression(profile, bits, cr);
        double direct = (raw - compressed) / raw;
        CHECK(pes(profile, cr) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("below break-even the saving goes negative, never throws") {
    auto profile = EnergyProfile::from_overhead(0.21875);
    CHECK(pes(profile, 1.0) < 0.0);
    CHECK(pes(profile, *becr(profile)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("preset budgets land the published lifetimes") {
    CHECK(estimate_lifetime_days(presets::budget("aventa")) ==
          doctest::Approx(113.0).epsilon(0.005));
    CHECK(estimate_lifetime_days(presets::budget("dtu10mw")) ==
          doctest::Approx(118.9).epsilon(0.005));
    // Within 10% of the published 114 / 120 days.
    CHECK(std::abs(estimate_lifetime_days(presets::budget("aventa")) - 114.0) <=
          11.4);
    CHECK(std::abs(estimate_lifetime_days(presets::budget("dtu10mw")) - 120.0) <=
          12.0);
    CHECK_THROWS_AS(presets::budget("unknown-turbine"), config_error);
}

TEST_CASE("average power splits between active and sleep") {
    PowerBudget budget;
    budget.active_w = 0.142;
    // 8.3% duty on 142 mW dominates; sleep leakage adds ~10 uW.
    CHECK(average_power_w(budget) ==
          doctest::Approx(0.083 * 0.142 + (1.0 - 0.083) * 3e-6 * 3.7)
              .epsilon(1e-12));

    // A round 11 mW average must give 32 Wh / 11 mW in days.
    PowerBudget eleven;
    eleven.duty_cycle = 1.0;
    eleven.active_w = 0.011;
    CHECK(estimate_lifetime_days(eleven) ==
          doctest::Approx(32.0 / 0.011 / 24.0).epsilon(1e-12));
}

TEST_CASE("solar sustainability matches all four published cells") {
    for (const char* turbine : {"aventa", "dtu10mw"}) {
        auto budget = presets::budget(turbine);
        auto median = self_sustainable(presets::solar_median(), budget);
        auto p95 = self_sustainable(presets::solar_p95(), budget);
        CHECK(median.sustainable);
        CHECK_FALSE(p95.sustainable);
        CHECK(median.harvested_w == doctest::Approx(0.0183816).epsilon(1e-9));
        CHECK(p95.harvested_w == doctest::Approx(0.002442).epsilon(1e-9));
        // The panel that would suffice at the 95th percentile is far larger
        // than the mounted 111 cm^2.
        CHECK(p95.suggested_area_cm2 > 111.0);
    }
}

TEST_CASE("energy preset profiles expose the published overheads") {
    CHECK(presets::profile("aventa", "pressure").overhead() ==
          doctest::Approx(0.21875).epsilon(1e-12));
    CHECK(presets::profile("aventa", "fft-hpf").overhead() ==
          doctest::Approx(0.3151).epsilon(1e-9));
    CHECK(presets::profile("aventa", "adpcm").overhead() ==
          doctest::Approx(0.2593).epsilon(1e-9));
    CHECK(presets::profile("dtu10mw", "pressure").overhead() ==
          doctest::Approx(0.0673).epsilon(1e-9));
    CHECK(presets::profile("dtu10mw", "fft-hpf").overhead() ==
          doctest::Approx(0.0945).epsilon(1e-9));
    CHECK(presets::profile("dtu10mw", "adpcm").overhead() ==
          doctest::Approx(0.0790).epsilon(1e-9));
    CHECK_THROWS_AS(presets::profile("aventa", "zip"), config_error);
}
