// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "coreset/diversity.hpp"
#include "coreset/entropy.hpp"
#include "coreset/error.hpp"
#include "coreset/features.hpp"
#include "coreset/manifest.hpp"
#include "coreset/report.hpp"
#include "coreset/selectors.hpp"

namespace py = pybind11;

namespace coreset {
namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

FeatureMatrix to_matrix(const FloatArray& a) {
  if (a.ndim() != 2) throw ShapeMismatchError("feature array must be 2-D");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto dim = static_cast<std::size_t>(a.shape(1));
  std::vector<float> data(rows * dim);
  if (!data.empty()) std::memcpy(data.data(), a.data(), data.size() * sizeof(float));
  return FeatureMatrix(rows, dim, std::move(data));
}

FloatArray to_array(const FeatureMatrix& m) {
  FloatArray out({m.rows(), m.dim()});
  if (!m.data().empty()) {
    std::memcpy(out.mutable_data(), m.data().data(), m.data().size() * sizeof(float));
  }
  return out;
}

Method method_arg(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw InvalidArgumentError("unknown method: " + name);
  return *m;
}

OverflowPolicy policy_arg(const std::string& name) {
  auto p = parse_overflow_policy(name);
  if (!p) throw InvalidArgumentError("unknown overflow policy: " + name);
  return *p;
}

py::dict metrics_dict(const SubsetMetrics& m) {
  py::dict d;
  d["total_duration_sec"] = m.total_duration;
  d["utterances"] = m.utterances;
  d["distinct_speakers"] = m.distinct_speakers;
  d["phoneme_entropy"] = m.phoneme_entropy;
  d["speaker_entropy"] = m.speaker_entropy;
  d["phoneme_coverage"] = m.phoneme_coverage;
  if (m.diversity) d["diversity"] = *m.diversity;
  if (m.mean_pairwise_sq_distance) d["mean_pairwise_sq_distance"] = *m.mean_pairwise_sq_distance;
  return d;
}

}  // namespace
}  // namespace coreset

PYBIND11_MODULE(_core, m) {
  using namespace coreset;
  m.doc() = "Core-set selection for speech corpora";

  static py::exception<Error> base_error(m, "CoresetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FileNotFoundError& e) {
      PyErr_SetString(PyExc_FileNotFoundError, e.what());
    } catch (const IndexOutOfRangeError& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    } catch (const Error& e) {
      base_error(e.what());
    }
  });

  py::class_<UtteranceRecord>(m, "UtteranceRecord")
      .def(py::init([](std::string id, std::string speaker, double duration_sec,
                       std::vector<std::string> phonemes, std::optional<std::string> text) {
             return UtteranceRecord{std::move(id), std::move(speaker), duration_sec,
                                    std::move(phonemes), std::move(text)};
           }),
           py::arg("id"), py::arg("speaker"), py::arg("duration_sec"),
           py::arg("phonemes") = std::vector<std::string>{}, py::arg("text") = py::none())
      .def_readwrite("id", &UtteranceRecord::id)
      .def_readwrite("speaker", &UtteranceRecord::speaker)
      .def_readwrite("duration_sec", &UtteranceRecord::duration_sec)
      .def_readwrite("phonemes", &UtteranceRecord::phonemes)
      .def_readwrite("text", &UtteranceRecord::text)
      .def("__eq__", [](const UtteranceRecord& a, const UtteranceRecord& b) { return a == b; })
      .def("__repr__", [](const UtteranceRecord& r) { return format_record(r); });

  py::class_<Manifest>(m, "Manifest")
      .def(py::init<std::vector<UtteranceRecord>>(), py::arg("records"))
      .def("__len__", &Manifest::size)
      .def("__getitem__", [](const Manifest& self, std::size_t i) { return self.at(i); })
      .def("find", &Manifest::find, py::arg("id"))
      .def_property_readonly("ids",
                             [](const Manifest& self) {
                               std::vector<std::string> ids;
                               for (std::size_t i = 0; i < self.size(); ++i) ids.push_back(self[i].id);
                               return ids;
                             })
      .def("total_duration", &Manifest::total_duration)
      .def("fingerprint", &Manifest::fingerprint);

  m.def("load_manifest", &load_manifest, py::arg("path"));
  m.def("write_manifest", py::overload_cast<const std::string&, const Manifest&>(&write_manifest),
        py::arg("path"), py::arg("manifest"));

  m.def("load_features", [](const std::string& path) { return to_array(load_features(path)); },
        py::arg("path"));
  m.def("write_features",
        [](const std::string& path, const FloatArray& a) { write_features(path, to_matrix(a)); },
        py::arg("path"), py::arg("features"));
  m.def("normalize_rows", [](const FloatArray& a) { return to_array(normalize_rows(to_matrix(a))); },
        py::arg("features"));
  m.def("concat_features",
        [](const std::vector<FloatArray>& parts) {
          std::vector<FeatureMatrix> mats;
          for (const auto& p : parts) mats.push_back(to_matrix(p));
          return to_array(concat_features(mats));
        },
        py::arg("parts"));

  m.def("diversity",
        [](const FloatArray& a) {
          const auto f = to_matrix(a);
          MomentAccumulator acc(f.dim());
          for (std::size_t i = 0; i < f.rows(); ++i) acc.absorb(f.row(i));
          return acc.diversity_total();
        },
        py::arg("subset"), "Sum of squared distances over ordered pairs of rows.");
  m.def("marginal_gain",
        [](const FloatArray& subset, FloatArray x) {
          const auto f = to_matrix(subset);
          const auto c = to_matrix(x.reshape({py::ssize_t{1}, x.size()}));
          MomentAccumulator acc(c.dim());
          for (std::size_t i = 0; i < f.rows(); ++i) acc.absorb(f.row(i));
          return acc.marginal_gain(c.row(0));
        },
        py::arg("subset"), py::arg("x"));
  m.def("entropy", [](const std::vector<double>& counts, double base) { return entropy(counts, base); },
        py::arg("counts"), py::arg("base") = 2.0);

  py::class_<SelectionStep>(m, "SelectionStep")
      .def_readonly("index", &SelectionStep::index)
      .def_readonly("objective", &SelectionStep::objective)
      .def_readonly("cumulative_duration", &SelectionStep::cumulative_duration);

  py::class_<SelectionResult>(m, "SelectionResult")
      .def_property_readonly("method",
                             [](const SelectionResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("indices", &SelectionResult::indices)
      .def_readonly("per_step", &SelectionResult::per_step)
      .def_readonly("seed", &SelectionResult::seed)
      .def_property_readonly("t_max", [](const SelectionResult& r) { return r.budget.t_max; })
      .def_property_readonly("overflow_policy",
                             [](const SelectionResult& r) {
                               return std::string(to_string(r.budget.overflow_policy));
                             })
      .def("total_duration", &SelectionResult::total_duration)
      .def("__eq__", [](const SelectionResult& a, const SelectionResult& b) { return a == b; });

  m.def("select",
        [](const std::string& method, const Manifest& manifest, std::optional<FloatArray> features,
           double t_max, std::uint64_t seed, const std::string& overflow_policy,
           std::size_t threads, double phoneme_weight, double speaker_weight,
           bool duration_weighted_speakers) {
          std::optional<FeatureMatrix> f;
          if (features) f = to_matrix(*features);
          EntropyBalanceOptions eo;
          eo.phoneme_weight = phoneme_weight;
          eo.speaker_weight = speaker_weight;
          eo.duration_weighted_speakers = duration_weighted_speakers;
          py::gil_scoped_release release;
          return select(method_arg(method), manifest, f ? &*f : nullptr,
                        {t_max, policy_arg(overflow_policy)}, seed, {threads}, eo);
        },
        py::arg("method"), py::arg("manifest"), py::arg("features") = py::none(),
        py::kw_only(), py::arg("t_max"), py::arg("seed") = 0,
        py::arg("overflow_policy") = "stop_on_first_overflow", py::arg("threads") = 1,
        py::arg("phoneme_weight") = 1.0, py::arg("speaker_weight") = 1.0,
        py::arg("duration_weighted_speakers") = false);

  m.def("evaluate_subset",
        [](const Manifest& manifest, const std::vector<std::size_t>& indices,
           std::optional<FloatArray> features) {
          std::optional<FeatureMatrix> f;
          if (features) f = to_matrix(*features);
          return metrics_dict(evaluate_subset(manifest, f ? &*f : nullptr, indices));
        },
        py::arg("manifest"), py::arg("indices"), py::arg("features") = py::none());

  m.def("selection_report_json",
        [](const SelectionResult& r, const Manifest& manifest, std::optional<FloatArray> features) {
          std::optional<FeatureMatrix> f;
          if (features) f = to_matrix(*features);
          return selection_report_json(r, manifest,
                                       evaluate_subset(manifest, f ? &*f : nullptr, r.indices));
        },
        py::arg("result"), py::arg("manifest"), py::arg("features") = py::none());
  m.def("parse_selection_report", &parse_selection_report, py::arg("text"), py::arg("manifest"));
}
