#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "stigmergy/cross_learning.hpp"
#include "stigmergy/environments.hpp"
#include "stigmergy/errors.hpp"
#include "stigmergy/experiments.hpp"
#include "stigmergy/foraging_model.hpp"
#include "stigmergy/metrics.hpp"
#include "stigmergy/pheromone_field.hpp"
#include "stigmergy/swarm_sim.hpp"

namespace py = pybind11;
using namespace stigmergy;

namespace {

std::vector<std::vector<double>> to_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows[r].assign(m.row(r).begin(), m.row(r).end());
    }
    return rows;
}

Policy policy_from(const std::vector<double>& probs) { return Policy(probs); }

py::dict summary_dict(const AdaptationSummary& s) {
    py::dict d;
    d["mta"] = s.mta;
    d["success_rate"] = s.success_rate;
    d["per_run_k"] = s.per_run_k;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stigmergic foraging simulation core";

    py::register_exception<degenerate_state_error>(m, "DegenerateStateError", PyExc_ArithmeticError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<io_error>(m, "IOError", PyExc_OSError);

    py::class_<SigmoidParams>(m, "SigmoidParams")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("dynamic_range"), py::arg("steepness"),
             py::arg("density_attract"))
        .def_property_readonly("dynamic_range", &SigmoidParams::dynamic_range)
        .def_property_readonly("steepness", &SigmoidParams::steepness)
        .def_property_readonly("density_attract", &SigmoidParams::density_attract);

    m.def("attractiveness", &attractiveness, py::arg("params"), py::arg("density"));
    m.def(
        "ifd_distribution", [](const std::vector<double>& a) { return ifd_distribution(a).values(); },
        py::arg("attractivenesses"));
    m.def(
        "choice_distribution",
        [](const std::vector<double>& tau, const std::vector<double>& a) {
            return choice_distribution(PheromoneField(tau, 1.0, 0.0), a).values();
        },
        py::arg("tau"), py::arg("attractivenesses"));
    m.def(
        "pheromone_step",
        [](const std::vector<double>& tau, double rho, double q, std::size_t chosen) {
            const auto next = PheromoneField(tau, rho, q).step(chosen);
            return std::vector<double>(next.tau().begin(), next.tau().end());
        },
        py::arg("tau"), py::arg("rho"), py::arg("q_deposit"), py::arg("chosen"));

    m.def(
        "cl_update",
        [](const std::vector<double>& p, std::size_t chosen, double r) {
            return cl_update(policy_from(p), chosen, r).values();
        },
        py::arg("policy"), py::arg("chosen"), py::arg("effective_reward"));
    m.def(
        "stigmergic_gain",
        [](const std::vector<double>& a, const std::vector<double>& tau, double rho, double q, std::size_t chosen) {
            return stigmergic_gain(a, tau, rho, q, chosen);
        },
        py::arg("attractivenesses"), py::arg("tau"), py::arg("rho"), py::arg("q_deposit"), py::arg("chosen"));
    m.def(
        "replicator_rhs",
        [](const std::vector<double>& p, const std::vector<double>& q) { return replicator_rhs(policy_from(p), q); },
        py::arg("policy"), py::arg("payoffs"));
    m.def(
        "verify_equivalence",
        [](const std::vector<double>& a, double rho, double q, std::size_t steps, std::uint64_t seed) {
            return verify_equivalence(a, rho, q, steps, seed);
        },
        py::arg("attractivenesses"), py::arg("rho"), py::arg("q_deposit"), py::arg("steps"), py::arg("seed"));
    m.def("initial_policy", [](std::size_t k) { return initial_policy(k).values(); }, py::arg("num_arms"));

    m.def(
        "run_adaptation",
        [](double epsilon, std::size_t runs, std::uint64_t seed, std::size_t epochs, std::int64_t delta,
           std::size_t memory, std::size_t threads) {
            ExperimentConfig c;
            c.general.kind = ExperimentKind::adapt;
            c.general.seed = seed;
            c.general.runs = runs;
            c.general.threads = threads;
            c.adapt.epsilon = epsilon;
            c.adapt.epochs = epochs;
            c.adapt.delta = delta;
            c.adapt.memory = memory;
            c.check();
            AdaptResult r;
            {
                py::gil_scoped_release release;
                r = run_adaptation(c);
            }
            py::dict out = summary_dict(r.summary);
            py::list traces;
            for (const auto& t : r.traces) {
                traces.append(to_rows(t.policy_history));
            }
            out["trajectories"] = traces;
            return out;
        },
        py::arg("epsilon") = 0.0, py::arg("runs") = 100, py::arg("seed") = 0, py::arg("epochs") = 500,
        py::arg("delta") = 100, py::arg("memory") = 350, py::arg("threads") = 0);

    m.def(
        "simulate_occupancy",
        [](const SigmoidParams& params, double q, std::uint64_t seed, std::size_t runs, std::size_t epochs) {
            StaticScenario s;
            s.epochs = epochs;
            Matrix occ;
            {
                py::gil_scoped_release release;
                occ = simulate_occupancy(s, params, q, seed, runs, 0);
            }
            return to_rows(occ);
        },
        py::arg("params") = SigmoidParams{}, py::arg("q_deposit") = 0.02, py::arg("seed") = 0, py::arg("runs") = 1,
        py::arg("epochs") = 120);

    m.def(
        "run_config",
        [](const std::string& json_text) {
            const ExperimentConfig c = config_from_json_text(json_text);
            std::ostringstream log, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_command(c, log, err);
            }
            return py::make_tuple(code, log.str(), err.str());
        },
        py::arg("config_json"));
    m.def("default_config_json", [] { return to_json_text(ExperimentConfig{}); });
}
