#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsma/experiments.hpp"

using namespace rsma;

TEST_SUITE_BEGIN("experiments");

namespace {

ExperimentConfig tiny_pdf_config() {
    ExperimentConfig cfg = default_config(ExperimentKind::PdfCompare);
    cfg.nt_list = {32};
    cfg.k_list = {8};
    cfg.epsilon_list = {0.5};
    cfg.trials = 20000;
    cfg.bins = 100;
    cfg.seed = 7;
    return cfg;
}

}  // namespace

TEST_CASE("key=value parsing and unknown keys") {
    ExperimentConfig cfg = default_config(ExperimentKind::SumrateSweep);
    apply_key_value(cfg, "nt", "32");
    apply_key_value(cfg, "k", "8");
    apply_key_value(cfg, "epsilon", "0.3, 0.5");
    apply_key_value(cfg, "tau", "0,0.5,1");
    apply_key_value(cfg, "snr_db", "20");
    apply_key_value(cfg, "trials", "1000");
    apply_key_value(cfg, "seed", "99");
    apply_key_value(cfg, "format", "json");
    CHECK(cfg.nt_list == std::vector<std::size_t>{32});
    CHECK(cfg.epsilon_list.size() == 2);
    CHECK(cfg.tau_list.size() == 3);
    CHECK(cfg.seed == 99);
    CHECK(cfg.format == OutputFormat::Json);

    CHECK_THROWS_AS(apply_key_value(cfg, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_key_value(cfg, "trials", "many"), ConfigError);
    CHECK_THROWS_AS(apply_key_value(cfg, "epsilon", ""), ConfigError);
    CHECK_THROWS_AS(apply_key_value(cfg, "format", "xml"), ConfigError);

    try {
        apply_key_value(cfg, "trials", "-3");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "trials");
    }
}

TEST_CASE("config file loading and override semantics") {
    const auto path = std::filesystem::temp_directory_path() / "rsma_test_cfg.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "nt = 24\n";
        out << "k = 6\n";
        out << "epsilon = 0.4   # trailing comment\n";
        out << "trials = 5000\n";
    }
    ExperimentConfig cfg = load_config_file(ExperimentKind::PdfCompare, path.string());
    CHECK(cfg.nt_list == std::vector<std::size_t>{24});
    CHECK(cfg.k_list == std::vector<std::size_t>{6});
    CHECK(cfg.trials == 5000);
    // Defaults survive for keys the file does not mention.
    CHECK(cfg.bins == 200);

    // CLI-style override wins over the file value.
    apply_key_value(cfg, "trials", "1234");
    CHECK(cfg.trials == 1234);

    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(ExperimentKind::PdfCompare, path.string()), ConfigError);
}

TEST_CASE("validation rejects inconsistent scenarios with the field named") {
    ExperimentConfig cfg = tiny_pdf_config();
    cfg.nt_list = {8};  // N_t <= K
    try {
        validate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field == "nt");
        CHECK(std::string(e.what()).find("N_t > K required") != std::string::npos);
    }

    cfg = tiny_pdf_config();
    cfg.epsilon_list = {0.3, 0.6};
    CHECK_THROWS_AS(validate(cfg), ConfigError);

    cfg = tiny_pdf_config();
    cfg.epsilon_list.clear();
    CHECK_THROWS_AS(validate(cfg), ConfigError);

    ExperimentConfig mse = default_config(ExperimentKind::MseSweep);
    mse.ratio_list = {2.5};  // 2.5 * 4 = 10 is fine; 2.5 * 6 = 15 is fine; 2.5*10=25 fine
    CHECK_NOTHROW(validate(mse));
    mse.ratio_list = {1.3};
    CHECK_THROWS_AS(validate(mse), ConfigError);

    ExperimentConfig sweep = default_config(ExperimentKind::SumrateSweep);
    sweep.tau_list = {0.5, 1.4};
    CHECK_THROWS_AS(validate(sweep), ConfigError);
}

TEST_CASE("pdf-compare: schema, summary row, and fit ordering") {
    const ExperimentConfig cfg = tiny_pdf_config();
    const Table table = run_pdf_compare(cfg);

    CHECK(table.columns ==
          std::vector<std::string>{"x", "emp_density", "lemma1_density", "baseline_density"});
    REQUIRE(table.rows.size() == cfg.bins + 1);

    const auto& summary = table.rows.back();
    CHECK(summary[0] == "mse");
    const double mse_lemma1 = std::stod(summary[2]);
    const double mse_baseline = std::stod(summary[3]);
    CHECK(mse_lemma1 < mse_baseline);

    bool has_seed = false;
    for (const auto& [key, value] : table.meta)
        if (key == "seed") {
            has_seed = true;
            CHECK(value == "7");
        }
    CHECK(has_seed);
}

TEST_CASE("experiment tables are deterministic across worker counts") {
    ExperimentConfig cfg = tiny_pdf_config();
    cfg.workers = 1;
    const Table serial = run_pdf_compare(cfg);
    cfg.workers = 4;
    const Table parallel = run_pdf_compare(cfg);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) CHECK(serial.rows[i] == parallel.rows[i]);
    CHECK(serial.meta == parallel.meta);
}

TEST_CASE("sumrate-sweep: tau = 0 column is method-independent") {
    ExperimentConfig cfg = default_config(ExperimentKind::SumrateSweep);
    cfg.trials = 10000;
    cfg.epsilon_list = {0.3};
    cfg.tau_list = {0.0, 1.0};
    cfg.seed = 3;
    const Table table = run_sumrate_sweep(cfg);
    REQUIRE(table.rows.size() == 2);

    // Columns: epsilon,tau,rate_mc,rate_lemma1,rate_baseline,se_mc.
    const auto& at_zero = table.rows[0];
    CHECK(at_zero[2] == at_zero[3]);
    CHECK(at_zero[2] == at_zero[4]);

    const auto& at_one = table.rows[1];
    CHECK(std::stod(at_one[4]) > std::stod(at_one[3]));  // baseline optimistic
}

TEST_CASE("validate-moments: row grid and the exact-mean rows pass") {
    ExperimentConfig cfg = default_config(ExperimentKind::ValidateMoments);
    cfg.nt_list = {16};
    cfg.k_list = {4};
    cfg.epsilon_list = {0.5};
    cfg.trials = 30000;
    cfg.seed = 11;
    const Table table = run_validate_moments(cfg);

    CHECK(table.columns == std::vector<std::string>{"Nt", "K", "epsilon", "stat", "analytic",
                                                    "empirical", "tolerance", "pass"});
    REQUIRE(table.rows.size() == 8);  // one stat per row
    for (const auto& row : table.rows) {
        if (row[3] == "mean" || row[3] == "zeta3" || row[3] == "zeta4" || row[3] == "xcc_mean")
            CHECK(row[7] == "1");
    }
}

TEST_CASE("csv and json writers") {
    ExperimentConfig cfg = tiny_pdf_config();
    cfg.trials = 5000;
    const Table table = run_pdf_compare(cfg);

    std::ostringstream csv;
    write_csv(table, csv);
    const std::string text = csv.str();
    CHECK(text.rfind("# experiment=pdf-compare", 0) == 0);
    CHECK(text.find("x,emp_density,lemma1_density,baseline_density\n") != std::string::npos);

    std::ostringstream json;
    write_json(table, json);
    CHECK(json.str().find("\"experiment\": \"pdf-compare\"") != std::string::npos);
    CHECK(json.str().find("\"columns\"") != std::string::npos);

    // Byte-identical on a rerun.
    std::ostringstream csv2;
    write_csv(run_pdf_compare(cfg), csv2);
    CHECK(csv.str() == csv2.str());
}

TEST_CASE("mobility inputs resolve to |J0| with the signed value recorded") {
    ExperimentConfig cfg = tiny_pdf_config();
    cfg.epsilon_list.clear();
    cfg.mobility = MobilityParams{30.0, 3.5e9, 1e-3};  // J0 ~ +0.1095
    cfg.trials = 5000;
    const Table table = run_pdf_compare(cfg);

    bool saw_signed = false, saw_eps = false;
    for (const auto& [key, value] : table.meta) {
        if (key == "epsilon_signed") saw_signed = true;
        if (key == "epsilon") {
            saw_eps = true;
            CHECK(std::stod(value) == doctest::Approx(0.1095).epsilon(0.01));
        }
    }
    CHECK(saw_signed);
    CHECK(saw_eps);
}

TEST_CASE("negative Jakes coefficient is simulated by magnitude, sign kept") {
    ExperimentConfig cfg = tiny_pdf_config();
    cfg.epsilon_list.clear();
    cfg.mobility = MobilityParams{60.0, 3.5e9, 1e-3};  // 2 pi f_D T ~ 4.40, J0 ~ -0.342
    cfg.trials = 5000;
    const Table table = run_pdf_compare(cfg);

    double eps = -1.0, eps_signed = 1.0;
    for (const auto& [key, value] : table.meta) {
        if (key == "epsilon") eps = std::stod(value);
        if (key == "epsilon_signed") eps_signed = std::stod(value);
    }
    CHECK(eps_signed == doctest::Approx(-0.342).epsilon(0.01));
    CHECK(eps == doctest::Approx(0.342).epsilon(0.01));
    CHECK(eps == doctest::Approx(-eps_signed).epsilon(1e-12));
}

TEST_SUITE_END();
