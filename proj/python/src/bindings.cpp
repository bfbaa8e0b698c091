#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opspread/channels.hpp"
#include "opspread/config.hpp"
#include "opspread/holevo.hpp"
#include "opspread/optimize.hpp"
#include "opspread/random.hpp"
#include "opspread/scenarios.hpp"
#include "opspread/spreading.hpp"
#include "opspread/states.hpp"
#include "opspread/version.hpp"

namespace py = pybind11;
using namespace opspread;

namespace {

ProbabilityVector probs_from_list(const std::vector<double>& w) {
  return ProbabilityVector::validate(w, 1e-9);
}

py::dict record_to_dict(const Record& r) {
  py::dict d;
  for (const auto& [k, v] : r.fields) {
    if (std::holds_alternative<long long>(v)) {
      d[k.c_str()] = std::get<long long>(v);
    } else if (std::holds_alternative<double>(v)) {
      d[k.c_str()] = std::get<double>(v);
    } else if (std::holds_alternative<bool>(v)) {
      d[k.c_str()] = std::get<bool>(v);
    } else {
      d[k.c_str()] = std::get<std::string>(v);
    }
  }
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holevo-information bounds and operator-spreading numerics";
  m.attr("__version__") = kVersion;

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<HermiticityError>(m, "HermiticityError", PyExc_ValueError);
  py::register_exception<PositivityError>(m, "PositivityError", PyExc_ValueError);
  py::register_exception<TraceError>(m, "TraceError", PyExc_ValueError);
  py::register_exception<UnitarityError>(m, "UnitarityError", PyExc_ValueError);
  py::register_exception<CompletenessError>(m, "CompletenessError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  // ---- matkernel ----
  m.def("kron", &kron);
  m.def("partial_trace", &partial_trace, py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def("trace_norm", &trace_norm);
  m.def("operator_norm", &operator_norm);
  m.def("herm_log", &herm_log, py::arg("m"), py::arg("clip") = kEigClip);
  m.def("evolution_unitary", &evolution_unitary, py::arg("h"), py::arg("t"));

  // ---- states ----
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def("__repr__", [](const DensityMatrix& rho) {
        return "<DensityMatrix dim=" + std::to_string(rho.dim()) + ">";
      });
  m.def(
      "validate_state",
      [](const Matrix& mat, double herm, double pos, double trace) {
        return validate_state(mat, StateTolerances{herm, pos, trace});
      },
      py::arg("m"), py::arg("hermiticity") = 1e-10, py::arg("positivity") = 1e-10,
      py::arg("trace") = 1e-10);
  m.def("von_neumann_entropy",
        [](const DensityMatrix& rho) { return von_neumann_entropy(rho); });
  m.def("relative_entropy", [](const DensityMatrix& eta, const DensityMatrix& mu) {
    return relative_entropy(eta, mu);
  });
  m.def("trace_distance", &trace_distance);
  m.def("skew_divergence", [](const DensityMatrix& eta, const DensityMatrix& mu,
                              double lam) { return skew_divergence(eta, mu, lam); });
  m.def("shannon_entropy",
        [](const std::vector<double>& p) { return shannon_entropy(probs_from_list(p)); });

  // ---- channels ----
  py::class_<KrausChannel>(m, "KrausChannel")
      .def_property_readonly("dim", &KrausChannel::dim)
      .def_property_readonly("kraus_ops", &KrausChannel::kraus_ops)
      .def_property_readonly("subsystem_dims",
                             [](const KrausChannel& ch) { return ch.subsystem_dims(); })
      .def("with_subsystems", &KrausChannel::with_subsystems)
      .def("__repr__", [](const KrausChannel& ch) {
        return "<KrausChannel dim=" + std::to_string(ch.dim()) + " kraus=" +
               std::to_string(ch.kraus_ops().size()) + ">";
      });
  m.def(
      "from_kraus",
      [](std::vector<Matrix> ops, std::optional<std::pair<int, int>> dims, double tol) {
        return KrausChannel::from_kraus(std::move(ops), dims, tol);
      },
      py::arg("ops"), py::arg("subsystem_dims") = std::nullopt,
      py::arg("completeness_tol") = 1e-9);
  m.def("unitary_channel",
        [](const Matrix& u, std::optional<std::pair<int, int>> dims) {
          return unitary_channel(u, dims);
        },
        py::arg("u"), py::arg("subsystem_dims") = std::nullopt);
  m.def("product_channel", &product_channel);
  m.def("apply", &apply);
  m.def("adjoint_apply", &adjoint_apply);
  m.def("random_channel", &random_channel, py::arg("dim"), py::arg("env_dim"),
        py::arg("seed"));
  m.def("choi_matrix", [](const KrausChannel& ch) { return choi_matrix(ch).matrix; });
  py::class_<ProductTest>(m, "ProductTest")
      .def_readonly("is_product", &ProductTest::is_product)
      .def_readonly("schmidt_values", &ProductTest::schmidt_values);
  m.def("is_product", &is_product, py::arg("ch"), py::arg("tol") = 1e-8);
  m.def("channel_to_text", &to_text);
  m.def("channel_from_text", &channel_from_text);

  // ---- holevo ----
  py::class_<Ensemble>(m, "Ensemble")
      .def_property_readonly("size", &Ensemble::size)
      .def_property_readonly("probs",
                             [](const Ensemble& e) { return e.probs().weights(); })
      .def_property_readonly("unitaries", &Ensemble::unitaries);
  m.def(
      "ensemble",
      [](const std::vector<double>& probs, std::vector<Matrix> unitaries) {
        return Ensemble::validate(probs_from_list(probs), std::move(unitaries));
      },
      py::arg("probs"), py::arg("unitaries"));

  py::class_<OutputFamily>(m, "OutputFamily")
      .def_property_readonly("probs",
                             [](const OutputFamily& f) { return f.probs.weights(); })
      .def_readonly("outputs", &OutputFamily::outputs)
      .def_readonly("baseline", &OutputFamily::baseline);
  m.def("encode", &encode, py::arg("rho0"), py::arg("ensemble"), py::arg("d_a"),
        py::arg("d_b"));
  m.def("output_states", &output_states, py::arg("ch"), py::arg("rho0"),
        py::arg("ensemble"), py::arg("d_a"), py::arg("d_b"));
  m.def("holevo_information", &holevo_information);
  m.def("complementary_state", &complementary_state, py::arg("family"), py::arg("i"));
  m.def("capacity_bounds", [](const OutputFamily& f) {
    const CapacityBounds b = capacity_bounds(f);
    return std::make_pair(b.lower, b.upper);
  });
  m.def("skew_identity_deviation", &skew_identity_deviation);
  m.def("tmax_bound", [](const OutputFamily& f) {
    const TmaxBound b = tmax_bound(f);
    return std::make_pair(b.t_max, b.bound);
  });
  m.def("lr_capacity_bound", [](double shannon, double eps) {
    const LrBounds b = lr_capacity_bound(shannon, eps);
    return std::make_pair(b.half, b.one);
  });

  py::class_<PerIndexBound>(m, "PerIndexBound")
      .def_readonly("p", &PerIndexBound::p)
      .def_readonly("comp_trace_norm", &PerIndexBound::comp_trace_norm)
      .def_readonly("skew", &PerIndexBound::skew);
  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("c_chi", &BoundReport::c_chi)
      .def_readonly("lower", &BoundReport::lower)
      .def_readonly("upper", &BoundReport::upper)
      .def_readonly("shannon", &BoundReport::shannon)
      .def_readonly("t_max", &BoundReport::t_max)
      .def_readonly("tmax_bound", &BoundReport::tmax_bound)
      .def_readonly("per_index", &BoundReport::per_index);
  m.def("bound_report", &bound_report);

  // ---- spreading ----
  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &OptimizerConfig::restarts)
      .def_readwrite("max_iters", &OptimizerConfig::max_iters)
      .def_readwrite("init_step", &OptimizerConfig::init_step)
      .def_readwrite("shrink", &OptimizerConfig::shrink)
      .def_readwrite("tol", &OptimizerConfig::tol)
      .def_readwrite("seed", &OptimizerConfig::seed);

  py::class_<SpinChainModel> chain(m, "SpinChainModel");
  py::enum_<SpinChainModel::Boundary>(chain, "Boundary")
      .value("open", SpinChainModel::Boundary::open)
      .value("periodic", SpinChainModel::Boundary::periodic);
  chain.def(py::init<>())
      .def_readwrite("n_sites", &SpinChainModel::n_sites)
      .def_readwrite("coupling", &SpinChainModel::coupling)
      .def_readwrite("field", &SpinChainModel::field)
      .def_readwrite("boundary", &SpinChainModel::boundary)
      .def_readwrite("max_sites", &SpinChainModel::max_sites);

  m.def("pauli", [](const std::string& axis) {
    if (axis.size() != 1) throw DomainError("pauli: expected a single axis letter");
    return pauli(axis[0]);
  });
  m.def("site_operator", &site_operator, py::arg("op"), py::arg("site"),
        py::arg("n_sites"));
  m.def("commutator_norm", &commutator_norm);
  m.def("build_hamiltonian", &build_hamiltonian);
  m.def("evolve_operator", &evolve_operator, py::arg("h"), py::arg("o"), py::arg("t"));

  py::class_<LightconeGrid>(m, "LightconeGrid")
      .def_readonly("times", &LightconeGrid::times)
      .def_readonly("distances", &LightconeGrid::distances)
      .def_readonly("values", &LightconeGrid::values);
  m.def("lightcone_scan", &lightcone_scan, py::arg("model"), py::arg("o_a"),
        py::arg("o_b"), py::arg("times"));

  m.def(
      "sup_commutator",
      [](const KrausChannel& ch, const Matrix& u_a, int d_a, int d_b,
         const OptimizerConfig& opt) {
        const SupEstimate est = sup_commutator(ch, u_a, d_a, d_b, opt);
        return std::make_pair(est.estimate, est.witness);
      },
      py::arg("ch"), py::arg("u_a"), py::arg("d_a"), py::arg("d_b"),
      py::arg("opt") = OptimizerConfig{});
  m.def(
      "eps_lr",
      [](const KrausChannel& ch, const Ensemble& e, int d_a, int d_b,
         const OptimizerConfig& opt) { return eps_lr(ch, e, d_a, d_b, opt); },
      py::arg("ch"), py::arg("ensemble"), py::arg("d_a"), py::arg("d_b"),
      py::arg("opt") = OptimizerConfig{});

  // ---- optimize ----
  m.def("unitary_from_params", [](int dim, const Eigen::VectorXd& theta) {
    return unitary_from_params(UnitaryParams{dim, theta});
  });
  m.def(
      "maximize_holevo",
      [](const KrausChannel& ch, const DensityMatrix& rho0, int m_size,
         const std::vector<double>& probs, int d_a, int d_b, const OptimizerConfig& cfg) {
        OptimizeResult res =
            maximize_holevo(ch, rho0, m_size, probs_from_list(probs), d_a, d_b, cfg);
        return py::make_tuple(std::move(res.best), res.value, res.trace);
      },
      py::arg("ch"), py::arg("rho0"), py::arg("m"), py::arg("probs"), py::arg("d_a"),
      py::arg("d_b"), py::arg("cfg") = OptimizerConfig{});
  m.def(
      "positivity_witness",
      [](const KrausChannel& ch, const DensityMatrix& rho0, int d_a, int d_b,
         const OptimizerConfig& cfg, double threshold) {
        WitnessResult res = positivity_witness(ch, rho0, d_a, d_b, cfg, threshold);
        return py::make_tuple(res.found, std::move(res.ensemble), res.value);
      },
      py::arg("ch"), py::arg("rho0"), py::arg("d_a"), py::arg("d_b"),
      py::arg("cfg") = OptimizerConfig{}, py::arg("threshold") = 1e-6);

  // ---- scenario runner ----
  m.def(
      "run_scenario",
      [](const std::string& config_text) {
        const RunConfig cfg = parse_config(config_text);
        const ScenarioResult res = run_scenario(cfg);
        py::list records;
        for (const Record& r : res.records) records.append(record_to_dict(r));
        py::list logs;
        for (const std::string& line : res.log_lines) logs.append(line);
        return py::make_tuple(res.all_pass, records, logs);
      },
      py::arg("config_text"),
      "Run a scenario from config text; returns (all_pass, records, log_lines).");
  m.def("scenario_csv", [](const std::string& config_text) {
    const RunConfig cfg = parse_config(config_text);
    return to_csv(run_scenario(cfg).records, cfg);
  });
}
