// Copyright 2026 The dpadmm Authors.
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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <vector>

#include "dpadmm/dataset.hpp"
#include "dpadmm/errors.hpp"
#include "dpadmm/experiment.hpp"
#include "dpadmm/linalg.hpp"
#include "dpadmm/models.hpp"
#include "dpadmm/privacy.hpp"
#include "dpadmm/solver.hpp"

namespace py = pybind11;

namespace dpadmm {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Vector ToVector(const Array& a) {
  if (a.ndim() != 1) throw InvalidArgument("expected a 1-d array");
  return Vector(a.data(), a.data() + a.size());
}

Array ToArray(const Vector& v) { return Array(v.size(), v.data()); }

Array Dense(const SparseMatrix& m) {
  const auto d = m.ToDense();
  Array out({m.rows(), m.cols()});
  std::copy(d.begin(), d.end(), out.mutable_data());
  return out;
}

Dataset FromArrays(const Array& features, const std::vector<int>& labels) {
  if (features.ndim() != 2) throw InvalidArgument("features must be 2-d");
  const auto rows = static_cast<std::size_t>(features.shape(0));
  const auto cols = static_cast<std::size_t>(features.shape(1));
  Dataset d{SparseMatrix::FromDense(
                rows, cols,
                std::vector<double>(features.data(), features.data() + features.size())),
            labels, "array"};
  d.Validate();
  return d;
}

py::dict TraceToDict(const TraceRecord& r) {
  py::dict d;
  d["iter"] = r.iter;
  d["objective"] = r.objective;
  d["constraint_violation"] = r.constraint_violation;
  d["elapsed_seconds"] = r.elapsed_seconds;
  d["r_value"] = r.r_value ? py::cast(*r.r_value) : py::none();
  return d;
}

ErmProblem MakeProblem(const Dataset& data, double lambda, double clip,
                       double graph_threshold) {
  ConstraintSystem cs = BuildFusedLassoConstraints(BuildGraphW(data, graph_threshold));
  ErmProblem p{data, std::move(cs), lambda, clip};
  p.Validate();
  return p;
}

py::dict SolveToDict(const ErmProblem& p, double eta, double rho,
                     std::optional<double> gamma, std::size_t iterations,
                     std::uint64_t seed, std::optional<NoiseSpec> noise,
                     bool accelerate, std::size_t eval_period,
                     std::optional<Array> ref_x, std::optional<Array> ref_y) {
  SolverConfig cfg;
  cfg.eta = eta;
  cfg.rho = rho;
  cfg.gamma = gamma;
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.noise = noise;
  cfg.accelerate = accelerate;
  std::optional<ReferencePoint> ref;
  if (ref_x && ref_y) ref = ReferencePoint{ToVector(*ref_x), ToVector(*ref_y)};
  SolveResult r;
  {
    py::gil_scoped_release release;
    r = Solve(p, cfg, eval_period, ref);
  }
  py::list trace;
  for (const auto& rec : r.trace) trace.append(TraceToDict(rec));
  py::dict out;
  out["x"] = ToArray(r.x);
  out["y"] = ToArray(r.y);
  out["x_avg"] = ToArray(r.x_avg);
  out["y_avg"] = ToArray(r.y_avg);
  out["gamma"] = r.gamma;
  out["trace"] = trace;
  out["warnings"] = r.warnings;
  return out;
}

}  // namespace
}  // namespace dpadmm

PYBIND11_MODULE(_core, m) {
  using namespace dpadmm;
  m.doc() = "Differentially private linearized ADMM core";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

  py::class_<PrivacyBudget>(m, "PrivacyBudget")
      .def(py::init([](double epsilon, double delta, double mu) {
             PrivacyBudget b{epsilon, delta, mu};
             b.Validate();
             return b;
           }),
           py::arg("epsilon"), py::arg("delta") = 1e-3, py::arg("mu") = 0.5)
      .def_readonly("epsilon", &PrivacyBudget::epsilon)
      .def_readonly("delta", &PrivacyBudget::delta)
      .def_readonly("mu", &PrivacyBudget::mu);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<double, std::size_t, double>(), py::arg("sigma"), py::arg("dim"),
           py::arg("sensitivity"))
      .def_readonly("sigma", &NoiseSpec::sigma)
      .def_readonly("dim", &NoiseSpec::dim)
      .def_readonly("sensitivity", &NoiseSpec::sensitivity)
      .def("__repr__", [](const NoiseSpec& s) {
        return "NoiseSpec(sigma=" + std::to_string(s.sigma) +
               ", dim=" + std::to_string(s.dim) + ")";
      });

  m.def("rdp_order", &RdpOrder, py::arg("budget"));
  m.def("calibrate_noise", &CalibrateNoise, py::arg("budget"), py::arg("iterations"),
        py::arg("samples"), py::arg("clip"), py::arg("dim"));
  m.def("verify_budget", &VerifyBudget, py::arg("spec"), py::arg("budget"),
        py::arg("iterations"), py::arg("samples"), py::arg("clip"));
  m.def("classic_gaussian_sigma", &ClassicGaussianSigma, py::arg("sensitivity"),
        py::arg("epsilon"), py::arg("delta"));
  m.def(
      "sample_noise",
      [](const NoiseSpec& spec, std::uint64_t seed) {
        NoiseSource src(seed);
        return ToArray(src.Sample(spec));
      },
      py::arg("spec"), py::arg("seed") = 0);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&FromArrays), py::arg("features"), py::arg("labels"))
      .def_property_readonly("size", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("nnz", [](const Dataset& d) { return d.features.nnz(); })
      .def_readonly("labels", &Dataset::labels)
      .def_readonly("name", &Dataset::name)
      .def("to_dense", [](const Dataset& d) { return Dense(d.features); })
      .def("__len__", &Dataset::size);

  m.def(
      "parse_libsvm",
      [](const std::filesystem::path& path, std::optional<std::size_t> dim) {
        return ParseLibsvmFile(path, dim);
      },
      py::arg("path"), py::arg("dim") = py::none());
  m.def("normalize_rows", &NormalizeRows, py::arg("dataset"));
  m.def("split", &Split, py::arg("dataset"), py::arg("test_fraction"),
        py::arg("seed") = 0);

  m.def(
      "logistic_loss",
      [](const Array& x, const Dataset& d) { return LogisticLoss(ToVector(x), d); },
      py::arg("x"), py::arg("dataset"));
  m.def(
      "logistic_grad",
      [](const Array& x, const Dataset& d, double clip) {
        return ToArray(LogisticGradClipped(ToVector(x), d, clip));
      },
      py::arg("x"), py::arg("dataset"), py::arg("clip") = kNoClip);
  m.def("smoothness_constant", &SmoothnessConstant, py::arg("dataset"));
  m.def(
      "soft_threshold",
      [](const Array& z, double kappa) { return ToArray(SoftThreshold(ToVector(z), kappa)); },
      py::arg("z"), py::arg("kappa"));
  m.def(
      "build_graph_w",
      [](const Dataset& d, double threshold) { return Dense(BuildGraphW(d, threshold)); },
      py::arg("dataset"), py::arg("threshold") = kDefaultGraphThreshold);

  py::class_<ErmProblem>(m, "Problem")
      .def(py::init(&MakeProblem), py::arg("dataset"), py::arg("lambda_"),
           py::arg("clip") = 1.0, py::arg("graph_threshold") = kDefaultGraphThreshold)
      .def_readonly("lambda_", &ErmProblem::lambda)
      .def_readonly("clip", &ErmProblem::clip)
      .def_readonly("data", &ErmProblem::data)
      .def_property_readonly("A", [](const ErmProblem& p) { return Dense(p.constraints.A); })
      .def_property_readonly("spectral_sq",
                             [](const ErmProblem& p) { return p.constraints.spectral_sq; })
      .def(
          "objective",
          [](const ErmProblem& p, const Array& x, const Array& y) {
            return Objective(ToVector(x), ToVector(y), p);
          },
          py::arg("x"), py::arg("y"))
      .def(
          "r_criterion",
          [](const ErmProblem& p, const Array& x, const Array& y, const Array& xs,
             const Array& ys) {
            return RCriterion(ToVector(x), ToVector(y), ToVector(xs), ToVector(ys), p);
          },
          py::arg("x"), py::arg("y"), py::arg("x_star"), py::arg("y_star"));

  m.def("solve", &SolveToDict, py::arg("problem"), py::arg("eta"), py::arg("rho") = 1.0,
        py::arg("gamma") = py::none(), py::arg("iterations") = 100, py::arg("seed") = 0,
        py::arg("noise") = py::none(), py::arg("accelerate") = false,
        py::arg("eval_period") = 1, py::arg("ref_x") = py::none(),
        py::arg("ref_y") = py::none());
  m.def(
      "accuracy", [](const Array& x, const Dataset& d) { return Accuracy(ToVector(x), d); },
      py::arg("x"), py::arg("dataset"));

  m.def(
      "run_experiment",
      [](const std::filesystem::path& config_path) {
        const ExperimentConfig cfg = LoadConfig(config_path);
        ExperimentReport rep;
        {
          py::gil_scoped_release release;
          rep = RunExperiment(cfg);
        }
        py::list rows;
        for (const auto& s : rep.summary) {
          py::dict row;
          row["algorithm"] = std::string(AlgorithmName(s.algorithm));
          row["epsilon"] = s.epsilon ? py::cast(*s.epsilon) : py::none();
          row["repeats"] = s.repeats;
          row["obj_mean"] = s.obj_mean;
          row["obj_std"] = s.obj_std;
          row["acc_mean"] = s.acc_mean;
          row["acc_std"] = s.acc_std;
          row["r_mean"] = s.r_mean;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config_path"));
}
