#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prwalk/components.hpp"
#include "prwalk/ddb_shape.hpp"
#include "prwalk/dice.hpp"
#include "prwalk/metrics.hpp"
#include "prwalk/reconnect.hpp"
#include "prwalk/report.hpp"
#include "prwalk/synth.hpp"

namespace py = pybind11;
using namespace prwalk;

namespace {

using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <typename A>
std::pair<int, int> shape_of(const A& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
  return {static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0))};
}

BinaryMask to_mask(const MaskArray& a) {
  const auto [w, h] = shape_of(a);
  std::vector<std::uint8_t> v(a.data(), a.data() + a.size());
  for (auto& b : v) b = b ? 1 : 0;
  return BinaryMask(w, h, std::move(v));
}

ProbabilityMap to_prob(const RealArray& a) {
  const auto [w, h] = shape_of(a);
  return ProbabilityMap(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

template <typename T>
py::array_t<T> to_array(const Grid<T>& g) {
  py::array_t<T> out({g.height(), g.width()});
  std::copy(g.values().begin(), g.values().end(), out.mutable_data());
  return out;
}

py::array_t<bool> mask_array(const BinaryMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

WalkConfig walk_config(double alpha, int roi_side, double eps_nn, bool reverse_walkers) {
  WalkConfig cfg;
  cfg.alpha = alpha;
  cfg.roi_side = roi_side;
  cfg.eps_nn = eps_nn;
  cfg.reverse_walkers = reverse_walkers;
  cfg.validate();
  return cfg;
}

py::tuple reconnect_result(const ReconnectResult& r) {
  return py::make_tuple(mask_array(r.mask), to_json(r.report).dump());
}

}  // namespace

PYBIND11_MODULE(_prwalk, m) {
  m.doc() = "Vessel reconnection by probability regularized walks";

  m.def(
      "prw",
      [](const MaskArray& mask, const RealArray& prob, double alpha, int roi_side, double eps_nn,
         bool reverse_walkers) {
        const auto cfg = walk_config(alpha, roi_side, eps_nn, reverse_walkers);
        const auto b = to_mask(mask);
        const auto p = to_prob(prob);
        ReconnectResult r;
        {
          py::gil_scoped_release release;
          r = prw(b, p, cfg);
        }
        return reconnect_result(r);
      },
      py::arg("mask"), py::arg("prob"), py::arg("alpha") = 0.2, py::arg("roi_side") = 100,
      py::arg("eps_nn") = 0.1, py::arg("reverse_walkers") = false);

  m.def(
      "baseline",
      [](const MaskArray& mask, const RealArray& prob, double alpha, int roi_side, double eps_nn) {
        const auto cfg = walk_config(alpha, roi_side, eps_nn, false);
        return reconnect_result(directional_walk_baseline(to_mask(mask), to_prob(prob), cfg));
      },
      py::arg("mask"), py::arg("prob"), py::arg("alpha") = 0.2, py::arg("roi_side") = 100,
      py::arg("eps_nn") = 0.1);

  m.def(
      "label_components",
      [](const MaskArray& mask, int connectivity) {
        if (connectivity != 4 && connectivity != 8) throw std::invalid_argument("connectivity must be 4 or 8");
        const auto labels = label_components(to_mask(mask), static_cast<Connectivity>(connectivity));
        return py::make_tuple(to_array<int>(labels), labels.count());
      },
      py::arg("mask"), py::arg("connectivity") = 8);

  m.def("skeletonize", [](const MaskArray& mask) { return mask_array(skeletonize(to_mask(mask))); });

  m.def(
      "dice_loss",
      [](const RealArray& p, const MaskArray& g, double eps) { return dice_loss(to_prob(p), to_mask(g), eps); },
      py::arg("p"), py::arg("g"), py::arg("epsilon") = 1.0);
  m.def(
      "dice_grad",
      [](const RealArray& p, const MaskArray& g, double eps) {
        return to_array<double>(dice_grad(to_prob(p), to_mask(g), eps));
      },
      py::arg("p"), py::arg("g"), py::arg("epsilon") = 1.0);

  m.def(
      "confusion",
      [](const MaskArray& pred, const MaskArray& truth) {
        const auto c = confusion(to_mask(pred), to_mask(truth));
        return py::dict(py::arg("tp") = c.tp, py::arg("fp") = c.fp, py::arg("tn") = c.tn,
                        py::arg("fn") = c.fn);
      },
      py::arg("pred"), py::arg("truth"));
  m.def(
      "auc", [](const RealArray& prob, const MaskArray& truth) { return auc(to_prob(prob), to_mask(truth)); },
      py::arg("prob"), py::arg("truth"));
  m.def("otsu_threshold", [](const RealArray& prob) { return otsu_threshold(to_prob(prob)); });

  m.def(
      "receptive_field",
      [](const std::string& mode, int repeats, bool impulse) -> py::tuple {
        const auto topology = standard_ddb(block_mode_from_string(mode), repeats);
        const int rf = receptive_field(topology);
        if (!impulse) return py::make_tuple(rf, py::none());
        return py::make_tuple(rf, impulse_response_support(topology, 2 * rf + 1));
      },
      py::arg("mode") = "cascade", py::arg("repeats") = 1, py::arg("impulse") = false);

  m.def(
      "make_fixture",
      [](std::uint64_t seed, int side, int branches, int gaps, int gap_length, double curvature,
         double noise) {
        SynthConfig cfg;
        cfg.rng_seed = seed;
        cfg.image_side = side;
        cfg.branch_count = branches;
        cfg.gap_count = gaps;
        cfg.gap_length = gap_length;
        cfg.curvature = curvature;
        cfg.noise_amplitude = noise;
        const auto f = make_fixture(cfg);
        return py::make_tuple(mask_array(f.truth), mask_array(f.broken), to_array<double>(f.probability));
      },
      py::arg("seed") = 1, py::arg("side") = 256, py::arg("branches") = 4, py::arg("gaps") = 3,
      py::arg("gap_length") = 20, py::arg("curvature") = 0.25, py::arg("noise") = 0.0);

  py::register_exception<SynthConfigError>(m, "SynthConfigError", PyExc_ValueError);
}
