/* Copyright 2026 The ESC Workbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Python bindings. Terms cross the boundary as strings in the 7-bit syntax.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "esc/bam.hpp"
#include "esc/families.hpp"
#include "esc/oracle.hpp"
#include "esc/proper.hpp"
#include "esc/sesame.hpp"
#include "esc/syntax.hpp"
#include "esc/typing.hpp"

namespace py = pybind11;
using namespace esc;

namespace {

Style style_of(bool unicode) { return unicode ? Style::Unicode : Style::Ascii; }

py::dict metrics_dict(const RunMetrics& m) {
  py::dict d;
  d["transitions"] = m.total();
  d["principal"] = m.principal_total;
  d["search"] = m.search_total;
  d["multiplicative"] = m.multiplicative_total();
  d["exponential"] = m.exponential_total();
  d["initial_size"] = m.initial_size;
  d["max_copied_value_size"] = m.max_copied_value_size;
  d["elapsed_seconds"] = m.elapsed_seconds;
  py::dict tags;
  for (std::size_t i = 0; i < kTags; ++i)
    if (m.counts[i]) tags[tag_name(static_cast<Tag>(i))] = m.counts[i];
  d["tags"] = tags;
  return d;
}

Mode mode_of(const std::string& s) {
  if (s == "good") return Mode::GoodFull;
  if (s == "good-nonerasing") return Mode::GoodNonErasing;
  if (s == "basic") return Mode::BasicNonErasing;
  throw py::value_error("mode must be 'good', 'good-nonerasing' or 'basic'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ESC workbench core";

  static py::exception<Error> esc_error(m, "EscError");
  static py::exception<SyntaxError> parse_error(m, "ParseError", esc_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SyntaxError& e) {
      parse_error(e.what());
    } catch (const Error& e) {
      esc_error(e.what());
    }
  });

  m.def(
      "parse", [](const std::string& text, bool unicode) { return print(parse(text), style_of(unicode)); },
      py::arg("text"), py::arg("unicode") = false, "Parses and prints back in canonical form.");
  m.def("size", [](const std::string& text) { return parse(text).size(); }, py::arg("text"));
  m.def(
      "alpha_eq", [](const std::string& a, const std::string& b) { return alpha_eq(parse(a), parse(b)); },
      py::arg("a"), py::arg("b"));
  m.def(
      "gc", [](const std::string& text) { return print(gc(parse(text))); }, py::arg("text"),
      "Drops every cut.");
  m.def(
      "check_proper",
      [](const std::string& text) {
        ProperResult r = check_proper(parse(text));
        return py::make_tuple(r.proper, r.reason, to_string(r.where));
      },
      py::arg("text"), "Returns (proper, reason, path).");
  m.def(
      "infer_type",
      [](const std::string& text) {
        TypingResult r = infer_type(parse(text));
        py::dict d;
        d["typed"] = r.typed;
        if (r.typed)
          d["type"] = describe(r);
        else
          d["error"] = std::string(to_string(r.error)) + ": " + r.reason;
        return d;
      },
      py::arg("text"));
  m.def(
      "family", [](const std::string& spec) { return print(gen(parse_family(spec))); }, py::arg("spec"),
      "Generated term for pi:K, delta:N, sigma:N or cutpi:K,H.");

  m.def(
      "sesame_run",
      [](const std::string& text, std::uint64_t max_steps, bool trace, bool unicode) {
        Term t = parse(text);
        std::vector<std::string> tags, states;
        SesameRun run = sesame_run(t, max_steps, [&](const SesameState& q, Tag tag) {
          tags.emplace_back(tag_name(tag));
          if (trace) {
            MarkedReadback rb = sesame_readback_marked(q);
            states.push_back(print_marked(rb.term, rb.jobs, style_of(unicode)));
          }
        });
        Term result = sesame_readback(run.state);
        py::dict d;
        d["outcome"] = to_string(run.outcome);
        d["readback"] = print(result);
        d["gc"] = print(gc(result));
        d["tags"] = tags;
        if (trace) d["trace"] = states;
        d["metrics"] = metrics_dict(run.metrics());
        d["invariants_ok"] = check_invariants(run.state).ok();
        return d;
      },
      py::arg("text"), py::arg("max_steps") = kDefaultStepLimit, py::arg("trace") = false,
      py::arg("unicode") = false);

  m.def(
      "bam_run",
      [](const std::string& text, std::uint64_t max_steps) {
        BamRun run = bam_run(parse(text), max_steps);
        py::dict d;
        d["outcome"] = to_string(run.outcome);
        d["readback"] = print(bam_readback(run.state));
        d["active"] = print(run.state.active());
        d["metrics"] = metrics_dict(run.metrics);
        return d;
      },
      py::arg("text"), py::arg("max_steps") = kDefaultStepLimit);

  m.def(
      "normalize",
      [](const std::string& text, const std::string& mode, std::uint64_t max_steps, std::optional<std::uint64_t> seed) {
        NormalizeOptions o;
        o.step_limit = max_steps;
        o.record_steps = false;
        if (seed) o.policy = Policy::random(*seed);
        NormalizeResult r = normalize(parse(text), mode_of(mode), o);
        py::dict d;
        d["outcome"] = to_string(r.outcome);
        d["term"] = print(r.term);
        d["steps"] = r.step_count;
        d["multiplicative"] = r.multiplicative_count();
        d["exponential"] = r.exponential_count();
        py::dict counts;
        for (std::size_t i = 0; i < kRuleKinds; ++i)
          if (r.counts[i]) counts[tag_name(static_cast<RuleKind>(i))] = r.counts[i];
        d["counts"] = counts;
        return d;
      },
      py::arg("text"), py::arg("mode") = "good", py::arg("max_steps") = kDefaultStepLimit,
      py::arg("seed") = py::none());
}
