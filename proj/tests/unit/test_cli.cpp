#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "stigmergy/experiments.hpp"
#include "stigmergy/table_io.hpp"

using namespace stigmergy;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("stigmergy_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

#ifdef STIGMERGY_CLI_PATH
int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + STIGMERGY_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

}  // namespace

TEST_CASE("adapt writes its output layout") {
    ExperimentConfig c;
    c.general.kind = ExperimentKind::adapt;
    c.general.runs = 3;
    c.adapt.epochs = 150;
    c.general.out_dir = scratch("adapt").string();
    std::ostringstream log, err;
    CHECK(run_command(c, log, err) == exit_codes::ok);
    const fs::path out(c.general.out_dir);
    CHECK(fs::exists(out / "config.json"));
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "per_run.csv"));
    const NumericTable traj = read_numeric_csv(out / "trajectories.csv");
    CHECK(traj.columns == std::vector<std::string>{"run", "epoch", "arm", "probability"});
    CHECK(traj.values.rows() == 3 * 151 * 3);
    CHECK(load_config(out / "config.json") == c);
    fs::remove_all(out);
}

TEST_CASE("validate with zero epochs writes one data row") {
    ExperimentConfig c;
    c.general.kind = ExperimentKind::validate;
    c.general.runs = 58;
    c.validate.scenario.epochs = 0;
    c.general.out_dir = scratch("validate0").string();
    std::ostringstream log, err;
    CHECK(run_command(c, log, err) == exit_codes::ok);
    const NumericTable occ = read_numeric_csv(fs::path(c.general.out_dir) / "occupancy.csv");
    CHECK(occ.values.rows() == 1);
    CHECK(occ.columns ==
          std::vector<std::string>{"epoch", "seconds", "patch_1", "patch_2", "patch_3", "patch_4", "outside"});
    CHECK(fs::exists(fs::path(c.general.out_dir) / "occupancy_ci.csv"));
    fs::remove_all(c.general.out_dir);
}

TEST_CASE("single-cell sweep agrees with adapt") {
    ExperimentConfig c;
    c.general.kind = ExperimentKind::sweep;
    c.general.seed = 3;
    c.sweep.memory = {200};
    c.sweep.delta = {60};
    c.sweep.epsilon = {0.1};
    c.sweep.runs_per_cell = 4;
    c.sweep.epochs = 200;
    const auto cells = run_sweep(c);
    REQUIRE(cells.size() == 1);

    ExperimentConfig a = c;
    a.general.kind = ExperimentKind::adapt;
    a.general.runs = 4;
    a.adapt.memory = 200;
    a.adapt.delta = 60;
    a.adapt.epsilon = 0.1;
    a.adapt.epochs = 200;
    const auto adapt = run_adaptation(a);
    CHECK(cells[0].summary.mta == adapt.summary.mta);
    CHECK(cells[0].summary.success_rate == adapt.summary.success_rate);
}

TEST_CASE("verify exit codes") {
    ExperimentConfig c;
    c.general.kind = ExperimentKind::verify;
    c.verify.configurations = 20;
    c.general.out_dir = scratch("verify").string();
    std::ostringstream log, err;
    CHECK(run_command(c, log, err) == exit_codes::ok);
    c.verify.inject_fault = true;
    CHECK(run_command(c, log, err) == exit_codes::verification_failed);
    c.verify.configurations = 0;
    CHECK(run_command(c, log, err) == exit_codes::usage);
    fs::remove_all(c.general.out_dir);
}

TEST_CASE("fit errors map to exit codes") {
    ExperimentConfig c;
    c.general.kind = ExperimentKind::fit;
    c.general.out_dir = scratch("fit").string();
    c.fit.target_path = (fs::temp_directory_path() / "stigmergy_no_such_target.csv").string();
    std::ostringstream log, err;
    CHECK(run_command(c, log, err) == exit_codes::io);

    const fs::path dir = scratch("fit_target");
    fs::create_directories(dir);
    write_text_file(dir / "t.csv", "epoch,a,b\n0,0.5,0.5\n");
    c.fit.target_path = (dir / "t.csv").string();
    CHECK(run_command(c, log, err) == exit_codes::usage);
    fs::remove_all(dir);
}

TEST_CASE("fit with a collapsed box echoes the point") {
    const fs::path dir = scratch("fit_echo");
    ExperimentConfig v;
    v.general.kind = ExperimentKind::validate;
    v.general.runs = 1;
    v.validate.scenario.epochs = 10;
    v.general.out_dir = (dir / "target").string();
    std::ostringstream log, err;
    REQUIRE(run_command(v, log, err) == exit_codes::ok);

    ExperimentConfig f = v;
    f.general.kind = ExperimentKind::fit;
    f.general.out_dir = (dir / "fit").string();
    f.fit.target_path = (dir / "target" / "occupancy.csv").string();
    f.fit.runs_per_evaluation = 1;
    f.fit.generations = 2;
    f.fit.bounds = {{{51.5, 51.5}, {0.29, 0.29}, {0.003, 0.003}, {0.02, 0.02}}};
    CHECK(run_command(f, log, err) == exit_codes::ok);
    const std::string fit = slurp(dir / "fit" / "fit.json");
    CHECK(fit.find("\"dynamic_range\": 51.5") != std::string::npos);
    CHECK(fit.find("\"best_fitness\": 0.0") != std::string::npos);
    CHECK(fs::exists(dir / "fit" / "fit_history.csv"));
    fs::remove_all(dir);
}

TEST_CASE("unwritable output is an I/O error") {
    const fs::path dir = scratch("blocked");
    fs::create_directories(dir);
    write_text_file(dir / "file", "x");
    ExperimentConfig c;
    c.general.kind = ExperimentKind::adapt;
    c.general.runs = 1;
    c.adapt.epochs = 120;
    c.general.out_dir = (dir / "file" / "sub").string();
    std::ostringstream log, err;
    CHECK(run_command(c, log, err) == exit_codes::io);
    fs::remove_all(dir);
}

#ifdef STIGMERGY_CLI_PATH
TEST_CASE("command-line exit codes") {
    const fs::path dir = scratch("binary");
    const std::string out = " --out \"" + dir.string() + "\"";
    CHECK(run_cli("verify --configurations 10" + out) == 0);
    CHECK(run_cli("verify --configurations 10 --inject-fault" + out) == 2);
    CHECK(run_cli("verify --configurations 0" + out) == 1);
    CHECK(run_cli("adapt --delta 500" + out) == 1);
    CHECK(run_cli("adapt --no-such-flag") == 1);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("adapt --config \"" + (dir / "absent.json").string() + "\"" + out) == 3);
    CHECK(run_cli("fit --target \"" + (dir / "absent.csv").string() + "\"" + out) == 3);
    CHECK(run_cli("adapt --runs 2 --epochs 120 --epsilon 0.1" + out) == 0);
    const ExperimentConfig written = load_config(dir / "config.json");
    CHECK(written.general.runs == 2);
    CHECK(written.adapt.epochs == 120);
    CHECK(written.adapt.epsilon == 0.1);

    // Flags win over the file.
    ExperimentConfig file;
    file.adapt.epsilon = 0.3;
    file.general.runs = 5;
    write_text_file(dir / "in.json", to_json_text(file));
    CHECK(run_cli("adapt --config \"" + (dir / "in.json").string() + "\" --runs 1 --epochs 110" + out) == 0);
    const ExperimentConfig merged = load_config(dir / "config.json");
    CHECK(merged.adapt.epsilon == 0.3);
    CHECK(merged.general.runs == 1);
    fs::remove_all(dir);
}
#endif
