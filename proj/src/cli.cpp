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

#include "esc/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "esc/bam.hpp"
#include "esc/proper.hpp"
#include "esc/sesame.hpp"
#include "esc/typing.hpp"

namespace esc {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Sesame: return "sesame";
    case RunMode::Bam: return "bam";
    case RunMode::Good: return "good";
    case RunMode::Basic: return "basic";
  }
  return "?";
}

namespace {

using json = nlohmann::json;

std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

// Writes the run as text or as one JSON object per line.
class Reporter {
 public:
  Reporter(const RunConfig& config, std::ostream& out, std::ostream& err) : c_(config), out_(out), err_(err) {}

  void input(const std::string& label) {
    if (c_.json)
      emit({{"event", "input"}, {"text", label}});
    else
      out_ << "Input: " << label << '\n';
  }

  void parsed(const Term& t) {
    if (c_.json)
      emit({{"event", "parsed"}, {"term", print(t)}, {"size", t.size()}});
    else
      out_ << "Parsed: " << print(t, c_.style) << '\n';
  }

  void proper() {
    if (c_.json)
      emit({{"event", "proper"}, {"ok", true}});
    else
      out_ << "The term is proper.\n";
  }

  void typing(const TypingResult& r) {
    if (c_.json) {
      json j{{"event", "type"}, {"typed", r.typed}};
      if (r.typed)
        j["type"] = describe(r);
      else
        j["error"] = std::string(to_string(r.error)) + ": " + r.reason;
      emit(j);
    } else if (r.typed) {
      out_ << "Type: " << describe(r) << '\n';
    } else {
      out_ << "The term is not typable: " << to_string(r.error) << ": " << r.reason << '\n';
    }
  }

  // A state of the trace; `tag` is null for the initial state.
  void state(std::uint64_t n, const char* tag, const char* tag_display, const Term& t, const std::vector<Mark>& marks) {
    if (c_.json) {
      json jobs = json::array();
      for (const Mark& m : marks) jobs.push_back({{"path", to_string(m.path)}, {"job", m.job}});
      json j{{"event", "step"}, {"n", n}, {"term", print(t)}, {"jobs", jobs}};
      j["tag"] = tag ? json(tag) : json(nullptr);
      j["display"] = print_marked(t, marks, c_.style);
      emit(j);
      return;
    }
    if (tag) {
      std::string label = c_.style == Style::Unicode ? tag_display : tag;
      out_ << "->" << label << std::string(5 - std::min<std::size_t>(4, display_width(label)), ' ');
    } else {
      out_ << std::string(7, ' ');
    }
    out_ << print_marked(t, marks, c_.style) << '\n';
  }

  void result(const Term& t, bool collected) {
    if (c_.json)
      emit({{"event", collected ? "gc" : "result"}, {"term", print(t)}});
    else
      out_ << (collected ? "->*GC  " : "Result: ") << print(t, c_.style) << '\n';
  }

  void metrics(const std::string& summary, Outcome o) {
    if (c_.json)
      emit({{"event", "metrics"}, {"outcome", to_string(o)}, {"summary", summary}});
    else
      out_ << "Metrics: " << summary << '\n';
  }

  int fail(int code, const std::string& kind, const std::string& message, const std::string& detail = {}) {
    if (c_.json) {
      json j{{"event", "error"}, {"kind", kind}, {"message", message}, {"status", code}};
      err_ << j.dump() << '\n';
    } else {
      err_ << message << '\n';
      if (!detail.empty()) err_ << detail << '\n';
    }
    return code;
  }

 private:
  void emit(const json& j) { out_ << j.dump() << '\n'; }

  const RunConfig& c_;
  std::ostream& out_;
  std::ostream& err_;
};

int outcome_status(Reporter& rep, Outcome o, std::uint64_t limit) {
  switch (o) {
    case Outcome::Normal: return kExitOk;
    case Outcome::StepLimit:
      return rep.fail(kExitStepLimit, "step-limit", "Stopped after the step limit of " + std::to_string(limit) + ".");
    case Outcome::Clash: return rep.fail(kExitClash, "clash", "Evaluation stopped on a clash.");
  }
  return kExitUsage;
}

int run_sesame(const Term& t, const RunConfig& c, Reporter& rep) {
  std::uint64_t n = 0;
  SesameObserver obs;
  if (c.trace) {
    SesameState init = sesame_init(t);
    MarkedReadback r = sesame_readback_marked(init);
    rep.state(0, nullptr, nullptr, r.term, r.jobs);
    obs = [&](const SesameState& q, Tag tag) {
      MarkedReadback rb = sesame_readback_marked(q);
      rep.state(++n, tag_name(tag), tag_name_unicode(tag), rb.term, rb.jobs);
    };
  }
  SesameRun run = sesame_run(t, c.step_limit, obs);
  Term result = sesame_readback(run.state);
  rep.result(c.gc ? gc(result) : result, c.gc);
  rep.metrics(summary_line(run.metrics()), run.outcome);
  return outcome_status(rep, run.outcome, c.step_limit);
}

int run_bam(const Term& t, const RunConfig& c, Reporter& rep) {
  if (!fv(t).empty())
    return rep.fail(kExitOpenTerm, "open-term",
                    "The basic machine needs a closed term; " + to_string(*fv(t).begin()) + " is free.");
  std::uint64_t n = 0;
  BamObserver obs;
  if (c.trace) {
    BamState init = bam_init(t);
    rep.state(0, nullptr, nullptr, bam_readback(init), {Mark{bam_active_path(init), 1}});
    obs = [&](const BamState& q, Tag tag) {
      rep.state(++n, tag_name(tag), tag_name_unicode(tag), bam_readback(q), {Mark{bam_active_path(q), 1}});
    };
  }
  BamRun run = bam_run(t, c.step_limit, obs);
  Term result = bam_readback(run.state);
  rep.result(c.gc ? gc(result) : result, c.gc);
  rep.metrics(summary_line(run.metrics), run.outcome);
  return outcome_status(rep, run.outcome, c.step_limit);
}

int run_oracle(const Term& t, const RunConfig& c, Reporter& rep) {
  auto start = std::chrono::steady_clock::now();
  Mode mode = c.mode == RunMode::Good ? Mode::GoodFull : Mode::BasicNonErasing;
  NameSupply names = NameSupply::after(t);
  Term cur = is_well_bound(t) ? t : rename_fresh(t, names);
  Stepper stepper(mode, c.seed ? Policy::random(*c.seed) : Policy::leftmost());
  std::array<std::uint64_t, kRuleKinds> counts{};
  std::uint64_t steps = 0;
  std::size_t max_copied = 0;
  Outcome outcome = Outcome::Normal;
  if (c.trace) rep.state(0, nullptr, nullptr, cur, {});
  while (true) {
    if (steps >= c.step_limit) {
      if (first_redex(cur, mode)) outcome = Outcome::StepLimit;
      break;
    }
    Term before = cur;
    auto s = stepper.step(cur, names);
    if (!s) {
      if (find_clash(cur)) outcome = Outcome::Clash;
      break;
    }
    max_copied = std::max(max_copied, copied_size(before, s->redex));
    cur = s->term;
    ++steps;
    ++counts[static_cast<std::size_t>(s->redex.kind)];
    if (c.trace) {
      const char* name = tag_name(s->redex.kind);
      rep.state(steps, name, name, cur, {});
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.result(c.gc ? gc(cur) : cur, c.gc);
  std::string summary = "mode=" + std::string(to_string(mode)) + " steps=" + std::to_string(steps) +
                        " size=" + std::to_string(t.size()) + " max_copied=" + std::to_string(max_copied);
  for (std::size_t i = 0; i < kRuleKinds; ++i)
    if (counts[i]) summary += std::string(" ") + tag_name(static_cast<RuleKind>(i)) + "=" + std::to_string(counts[i]);
  char buf[64];
  std::snprintf(buf, sizeof buf, " elapsed_us=%.1f", secs * 1e6);
  rep.metrics(summary + buf, outcome);
  return outcome_status(rep, outcome, c.step_limit);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int run_term(const Term& t, const std::string& label, const RunConfig& config, std::ostream& out,
             std::ostream& err) {
  Reporter rep(config, out, err);
  rep.input(label);
  rep.parsed(t);
  ProperResult pr = check_proper(t);
  if (!pr)
    return rep.fail(kExitImproper, "improper", "The term is not proper: " + pr.reason + " (at " + to_string(pr.where) + ")");
  rep.proper();
  if (config.type_check) rep.typing(infer_type(t));
  if (auto where = find_clash(t))
    return rep.fail(kExitClash, "clash", "The term has a clash at " + to_string(*where) + ".");
  try {
    switch (config.mode) {
      case RunMode::Sesame: return run_sesame(t, config, rep);
      case RunMode::Bam: return run_bam(t, config, rep);
      case RunMode::Good:
      case RunMode::Basic: return run_oracle(t, config, rep);
    }
  } catch (const Error& e) {
    return rep.fail(kExitUsage, "internal", std::string("Internal error: ") + e.what());
  }
  return kExitUsage;
}

int run_text(const std::string& text, const RunConfig& config, std::ostream& out, std::ostream& err) {
  Term t = Term::var(VarId::mult(0));
  try {
    t = parse(text);
  } catch (const SyntaxError& e) {
    Reporter rep(config, out, err);
    rep.input(text);
    return rep.fail(kExitSyntax, "syntax", std::string("Syntax error: ") + e.what(),
                    "  " + text + "\n  " + caret_line(e.span()));
  } catch (const BindingError& e) {
    Reporter rep(config, out, err);
    rep.input(text);
    return rep.fail(kExitSyntax, "binding", std::string("Binding error: ") + e.what(),
                    "  " + text + "\n  " + caret_line(e.span()));
  }
  return run_term(t, text, config, out, err);
}

int run_lines(std::istream& in, const RunConfig& config, std::ostream& out, std::ostream& err, bool prompt) {
  int status = kExitOk;
  std::string line;
  bool first = true;
  while (true) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (!first && !config.json) out << '\n';
    first = false;
    int s = run_text(text, config, out, err);
    if (status == kExitOk) status = s;
  }
  if (prompt) out << '\n';
  return status;
}

int self_test(std::ostream& out, std::ostream& err) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out << "self-test " << name << ": " << (ok ? "ok" : "FAILED") << (detail.empty() ? "" : " (" + detail + ")") << '\n';
    if (!ok) ++failures;
  };

  {
    const std::vector<Tag> expected = {Tag::Sea1, Tag::Bang, Tag::Sea1, Tag::Bang, Tag::Sea1, Tag::Lolli, Tag::Sea1,
                                       Tag::Sea1, Tag::AxM1, Tag::AxM1, Tag::AxM1, Tag::Sea4, Tag::Sea6};
    std::vector<Tag> tags;
    SesameRun run = sesame_run(parse("[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4"), kDefaultStepLimit,
                               [&](const SesameState&, Tag t) { tags.push_back(t); });
    Term r = gc(sesame_readback(run.state));
    bool ok = tags == expected && alpha_eq(r, parse("\\m1m1"));
    report("example", ok, "transitions=" + std::to_string(tags.size()) + " gc=" + print(r));
  }
  BenchOptions opts;
  opts.repetitions = 1;
  opts.warmups = 0;
  for (const char* fam : {"cutpi:3,4", "delta:3", "sigma:3"}) {
    BenchReport rep = bench({parse_family(fam)}, opts);
    const BenchRow& row = rep.rows.front();
    report(fam, row.facts_hold,
           "principal=" + std::to_string(row.principal_total) + " exponential=" + std::to_string(row.exponential) +
               " multiplicative=" + std::to_string(row.multiplicative) + (row.facts_hold ? "" : " " + row.facts));
  }
  if (failures) err << failures << " self-test(s) failed\n";
  return failures ? kExitUsage : kExitOk;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"ESC cut-elimination workbench"};
  RunConfig config;
  std::string mode = "sesame";
  std::string family;
  std::vector<std::string> exprs;
  std::vector<std::string> files;
  bool no_gc = false;
  bool ascii = false;
  bool run_self_test = false;
  std::uint64_t seed = 0;

  app.add_option("--mode", mode, "sesame, bam, good or basic")
      ->check(CLI::IsMember({"sesame", "bam", "good", "basic"}))
      ->capture_default_str();
  app.add_flag("--trace", config.trace, "print every transition");
  app.add_flag("--no-gc", no_gc, "skip the final garbage collection");
  app.add_flag("--type", config.type_check, "infer an IMELL type");
  app.add_option("--max-steps", config.step_limit, "step limit")->capture_default_str();
  auto* fam_opt = app.add_option("--family", family, "generated input: pi:K, delta:N, sigma:N or cutpi:K,H");
  auto* seed_opt = app.add_option("--seed", seed, "random redex choice in good/basic modes");
  app.add_flag("--json", config.json, "JSON lines output");
  app.add_flag("--ascii", ascii, "7-bit output");
  app.add_flag("--self-test", run_self_test, "reduce a few known terms and check them");
  auto* expr_opt = app.add_option("-e,--expr", exprs, "term to run (repeatable)");
  auto* file_opt = app.add_option("files", files, "files with one term per line")->check(CLI::ExistingFile);
  fam_opt->excludes(expr_opt)->excludes(file_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.gc = !no_gc;
  config.style = ascii ? Style::Ascii : Style::Unicode;
  if (mode == "bam") config.mode = RunMode::Bam;
  if (mode == "good") config.mode = RunMode::Good;
  if (mode == "basic") config.mode = RunMode::Basic;
  if (*seed_opt) config.seed = seed;

  int status = kExitOk;
  auto merge = [&](int s) {
    if (status == kExitOk) status = s;
  };

  if (run_self_test) {
    merge(self_test(std::cout, std::cerr));
    if (family.empty() && exprs.empty() && files.empty()) return status;
  }

  if (!family.empty()) {
    FamilySpec spec;
    try {
      spec = parse_family(family);
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      return kExitUsage;
    }
    config.family = spec;
    merge(run_term(gen(spec), to_string(spec), config, std::cout, std::cerr));
    return status;
  }
  for (const auto& e : exprs) merge(run_text(e, config, std::cout, std::cerr));
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) {
      std::cerr << "cannot read " << f << '\n';
      merge(kExitUsage);
      continue;
    }
    merge(run_lines(in, config, std::cout, std::cerr));
  }
  if (!exprs.empty() || !files.empty()) return status;

  bool tty = isatty(STDIN_FILENO);
  if (!config.json) std::cout << "ESC workbench. One term per line; accepted grammar:\n" << grammar_text() << '\n';
  merge(run_lines(std::cin, config, std::cout, std::cerr, tty));
  return status;
}

}  // namespace esc
