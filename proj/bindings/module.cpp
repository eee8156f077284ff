#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xorsat/decimation.hpp"
#include "xorsat/factor_graph.hpp"
#include "xorsat/gf2.hpp"
#include "xorsat/instance.hpp"
#include "xorsat/peeling.hpp"
#include "xorsat/rng.hpp"
#include "xorsat/theory.hpp"

namespace py = pybind11;
using namespace xorsat;

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-XORSAT laboratory core";

  py::class_<Instance>(m, "Instance")
      .def_readonly("n", &Instance::n)
      .def_readonly("k", &Instance::k)
      .def_property_readonly("m", &Instance::m)
      .def_property_readonly("clauses",
                             [](const Instance& inst) {
                               py::list out;
                               for (const Clause& c : inst.clauses)
                                 out.append(py::make_tuple(c.vars, int(c.rhs)));
                               return out;
                             })
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.n) + " m=" + std::to_string(inst.m()) +
               " k=" + std::to_string(inst.k) + ">";
      });

  py::class_<EliminationResult>(m, "EliminationResult")
      .def_readonly("n", &EliminationResult::n)
      .def_readonly("rank", &EliminationResult::rank)
      .def_readonly("consistent", &EliminationResult::consistent)
      .def_readonly("particular", &EliminationResult::particular)
      .def_property_readonly("nullity",
                             [](const EliminationResult& r) { return r.nullspace_basis.size(); })
      .def("count_exp", &EliminationResult::count_exp);

  py::class_<MarginalValue>(m, "MarginalValue")
      .def_readonly("num_exp", &MarginalValue::num_exp)
      .def_readonly("den_exp", &MarginalValue::den_exp)
      .def("unsat", &MarginalValue::unsat)
      .def("is_half", &MarginalValue::is_half)
      .def("p", &MarginalValue::p);

  py::class_<CoreResult>(m, "CoreResult")
      .def_readonly("core", &CoreResult::core)
      .def_readonly("kept", &CoreResult::kept);

  py::class_<DecimationTrace>(m, "DecimationTrace")
      .def_readonly("output", &DecimationTrace::output)
      .def_readonly("violated_on_removal", &DecimationTrace::violated_on_removal)
      .def_readonly("free_steps", &DecimationTrace::free_steps)
      .def_property_readonly("free_fraction",
                             [](const DecimationTrace& t) { return free_fraction(t); });

  m.def("sample_instance", &sample_instance, py::arg("k"), py::arg("n"), py::arg("m"),
        py::arg("seed"));
  m.def("serialize", &serialize);
  m.def("parse_instance", &parse_instance);
  m.def("instance_hash", &instance_hash);
  m.def(
      "evaluate",
      [](const Instance& inst, const Assignment& a) {
        const EvalResult r = evaluate(inst, a);
        return py::make_tuple(r.satisfied, r.violated_count);
      },
      py::arg("inst"), py::arg("assignment"));
  m.def("hamming", &hamming);

  m.def("eliminate", py::overload_cast<const Instance&>(&eliminate));
  m.def("sample_solution",
        py::overload_cast<const EliminationResult&, uint64_t>(&sample_solution), py::arg("res"),
        py::arg("seed"));
  m.def("exact_marginal", py::overload_cast<const Instance&, VarId>(&exact_marginal),
        py::arg("inst"), py::arg("var"));

  m.def("peel", &peel);
  m.def("peel_randomized", &peel_randomized, py::arg("inst"), py::arg("seed"));
  m.def("project", &project);
  m.def("extend_core_solution", &extend_core_solution, py::arg("core_sol"), py::arg("original"),
        py::arg("core_result"), py::arg("seed"));

  m.def(
      "run_decimation",
      [](const Instance& inst, const std::string& rule_name, int radius, uint64_t seed) {
        const LocalRule rule =
            rule_name == "uc" ? make_rule_uc() : make_rule_marginal(radius);
        if (rule_name != "uc" && rule_name != "marginal")
          throw std::invalid_argument("rule must be 'uc' or 'marginal'");
        const auto Z = random_unit_vector(inst.n, seed, streams::kOrdering);
        const auto U = random_unit_vector(inst.n, seed, streams::kInternal);
        return run_decimation(inst, rule, Z, U);
      },
      py::arg("inst"), py::arg("rule") = "uc", py::arg("radius") = 4, py::arg("seed") = 0);
  m.def("free_fraction", &free_fraction);

  auto th = m.def_submodule("theory", "closed-form thresholds and freeness constants");
  th.def("solve_Q", &theory::solve_Q, py::arg("k"), py::arg("r"), py::arg("tol") = 1e-12);
  th.def("r_core", &theory::r_core, py::arg("k"), py::arg("tol") = 1e-7);
  th.def("V", &theory::V);
  th.def("lambda_hat", &theory::lambda_hat);
  th.def("mu", &theory::mu);
  th.def("mu_u", &theory::mu_u);
  th.def("lower_inc_gamma", &theory::lower_inc_gamma);
  th.def("w1", &theory::w1);
  th.def("w1_star", &theory::w1_star);
  th.def("S_l", &theory::S_l);
  th.def("w_e", &theory::w_e);
  th.def("x_pm", &theory::x_pm);
  th.def("w_e_star", &theory::w_e_star);
  th.def("binary_entropy", &theory::binary_entropy);
  th.def("first_moment_f", &theory::first_moment_f);
  th.def("r_star", &theory::r_star);
  th.def("r_1", [](int k) { return theory::r_1(k); });
  th.def("r_sat_estimate", &theory::r_sat_estimate, py::arg("k"), py::arg("tol") = 1e-7);
}
