// Copyright 2026 The Deckforge Authors
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

// deckforge command-line driver. Every subcommand produces a set of named
// files; with --out they land in a content-addressed stage directory next to
// a manifest.json, otherwise the primary file goes to stdout.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "deckforge/deckforge.hpp"
#include "deckforge/qa/http_client.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace deckforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputFile {
  std::string path;
  std::string bytes;
};

struct StageOutput {
  std::map<std::string, std::string> files;
  std::string primary;                      // printed when there is no --out
  std::map<std::string, std::string> quarantine;  // written under failed/
  json manifest_extra = json::object();
  std::vector<std::string> messages;        // echoed to stderr
  int status = kExitOk;
  bool failed = false;                      // the whole stage goes to failed/
};

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << bytes;
}

/// Directories expand to their files with one of `exts`, sorted by name.
std::vector<InputFile> load_inputs(const std::vector<std::string>& args, const std::vector<std::string>& exts) {
  std::vector<InputFile> out;
  for (const auto& a : args) {
    if (fs::is_directory(a)) {
      std::vector<std::string> names;
      for (const auto& e : fs::directory_iterator(a)) {
        if (e.is_regular_file() && std::find(exts.begin(), exts.end(), e.path().extension().string()) != exts.end()) {
          names.push_back(e.path().string());
        }
      }
      std::sort(names.begin(), names.end());
      for (const auto& n : names) out.push_back({n, read_bytes(n)});
    } else {
      out.push_back({a, read_bytes(a)});
    }
  }
  if (out.empty()) throw UsageError("no input files");
  return out;
}

const std::vector<std::string> kDeckExts = {".cmd", ".scm", ".sde", ".jsonl"};

json diagnostics_json(const std::vector<Diagnostic>& diags) {
  json arr = json::array();
  for (const auto& d : diags) {
    arr.push_back({{"severity", to_string(d.severity)},
                   {"code", d.code},
                   {"message", d.message},
                   {"line", d.span.line},
                   {"column", d.span.column}});
  }
  return arr;
}

struct NamedIr {
  std::string name;
  DeckIR ir;
};

/// IRs from deck files or from JSON lines carrying an `ir` (or `source_ir`)
/// object. Any deck that fails to parse or extract fails the stage.
std::vector<NamedIr> load_irs(const std::vector<InputFile>& inputs, StageOutput& out) {
  std::vector<NamedIr> irs;
  std::string errors;
  for (const auto& f : inputs) {
    if (fs::path(f.path).extension() == ".jsonl") {
      std::istringstream in(f.bytes);
      std::string line;
      int n = 0;
      while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          const json j = json::parse(line);
          const json& doc = j.contains("ir") ? j.at("ir") : j.at("source_ir");
          irs.push_back({j.value("file", f.path + ":" + std::to_string(n)), ir_from_json(doc)});
        } catch (const std::exception& e) {
          errors += f.path + ":" + std::to_string(n) + ": " + e.what() + "\n";
        }
      }
      continue;
    }
    const ParseResult parsed = parse_deck(f.bytes);
    std::vector<Diagnostic> diags = parsed.diagnostics;
    if (parsed.ok()) {
      ExtractResult ex = extract_ir(parsed.commands);
      diags.insert(diags.end(), ex.diagnostics.begin(), ex.diagnostics.end());
      if (ex.ok()) {
        irs.push_back({f.path, std::move(ex.ir)});
        continue;
      }
    }
    for (const auto& d : diags) {
      if (d.severity == Severity::kError) errors += format_diagnostic(f.path, d) + "\n";
    }
  }
  if (!errors.empty()) {
    out.failed = true;
    out.status = kExitFail;
    out.files["errors.txt"] = errors;
    out.messages.push_back("input errors:\n" + errors);
  }
  return irs;
}

AliasTable load_aliases(const std::string& path) {
  if (path.empty()) return AliasTable::defaults();
  try {
    return AliasTable::load(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

StyleLibrary load_styles(const std::string& dir) {
  if (dir.empty()) return StyleLibrary::builtin();
  if (!fs::is_directory(dir)) throw UsageError("style directory '" + dir + "' does not exist");
  return StyleLibrary::load(dir);
}

std::string jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

/// Effective option values of a subcommand, defaults included.
json options_json(const CLI::App& sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.find("help") != std::string::npos || name == "--config" || name == "--out") continue;
    std::string key = name;
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (opt->count() > 0) {
      const auto& res = opt->results();
      j[key] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      j[key] = opt->get_default_str();
    }
  }
  return j;
}

/// Runs a stage, handling caching, manifests and quarantine.
int run_stage(const CLI::App& sub, const std::string& out_dir, const std::vector<InputFile>& inputs,
              const std::function<StageOutput()>& body) {
  const std::string name = sub.get_name();
  const json config = options_json(sub);
  json input_list = json::array();
  std::string input_digest;
  for (const auto& f : inputs) {
    const std::string h = sha256_hex(f.bytes);
    input_list.push_back({{"path", f.path}, {"sha256", h}});
    input_digest += f.path + "=" + h + ";";
  }
  const std::string key = tagged_hash("deckforge.stage", {name, DECKFORGE_VERSION, config.dump(), input_digest}).substr(0, 16);
  const std::string stage_dir = name + "-" + key;

  if (!out_dir.empty()) {
    const fs::path done = fs::path(out_dir) / stage_dir / "manifest.json";
    if (fs::exists(done)) {
      const json m = json::parse(read_bytes(done.string()));
      std::cerr << "up to date: " << (fs::path(out_dir) / stage_dir).string() << "\n";
      std::cout << (fs::path(out_dir) / stage_dir).string() << "\n";
      return m.value("exit_status", kExitOk);
    }
  }

  StageOutput result;
  try {
    result = body();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    result.failed = true;
    result.status = kExitFail;
    result.files["errors.txt"] += std::string(e.what()) + "\n";
    result.messages.push_back(std::string("error: ") + e.what());
  }
  if (result.failed && result.status == kExitOk) result.status = kExitFail;
  for (const auto& m : result.messages) std::cerr << m << (m.empty() || m.back() != '\n' ? "\n" : "");

  if (out_dir.empty()) {
    if (!result.primary.empty() && result.files.count(result.primary)) std::cout << result.files.at(result.primary);
    return result.status;
  }

  json manifest = {{"tool", "deckforge"},
                   {"version", DECKFORGE_VERSION},
                   {"subcommand", name},
                   {"key", key},
                   {"inputs", input_list},
                   {"config", config},
                   {"exit_status", result.status},
                   {"outputs", json::array()}};
  for (const auto& [k, v] : result.manifest_extra.items()) manifest[k] = v;
  for (const auto& [file, _] : result.files) manifest["outputs"].push_back(file);

  const fs::path root(out_dir);
  const fs::path failed_dir = root / "failed" / stage_dir;
  if (result.failed) {
    fs::remove_all(failed_dir);
    for (const auto& [file, bytes] : result.files) write_bytes(failed_dir / file, bytes);
    for (const auto& [file, bytes] : result.quarantine) write_bytes(failed_dir / file, bytes);
    write_bytes(failed_dir / "manifest.json", manifest.dump(2) + "\n");
    std::cerr << "stage failed; partial outputs in " << failed_dir.string() << "\n";
    return result.status;
  }
  const fs::path tmp = root / (".tmp-" + stage_dir);
  fs::remove_all(tmp);
  for (const auto& [file, bytes] : result.files) write_bytes(tmp / file, bytes);
  write_bytes(tmp / "manifest.json", manifest.dump(2) + "\n");
  fs::remove_all(root / stage_dir);
  fs::rename(tmp, root / stage_dir);
  if (!result.quarantine.empty()) {
    fs::remove_all(failed_dir);
    for (const auto& [file, bytes] : result.quarantine) write_bytes(failed_dir / file, bytes);
    std::cerr << "quarantined items in " << failed_dir.string() << "\n";
  }
  std::cout << (root / stage_dir).string() << "\n";
  return result.status;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 1) throw std::invalid_argument(item);
      ks.push_back(k);
    } catch (const std::exception&) {
      throw UsageError("invalid k value '" + item + "'");
    }
  }
  if (ks.empty()) throw UsageError("empty --k list");
  return ks;
}

ConstantMap parse_resolutions(const std::vector<std::string>& items) {
  ConstantMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--resolve expects name=value, got '" + item + "'");
    const auto value = Decimal::parse(item.substr(eq + 1));
    if (!value) throw UsageError("--resolve value for '" + item.substr(0, eq) + "' is not a number");
    out[item.substr(0, eq)] = *value;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deckforge: structure-editor deck tooling for instruction and preference datasets"};
  app.set_version_flag("--version", std::string(DECKFORGE_VERSION));
  app.set_config("--config", "", "key = value configuration file ([subcommand] sections)");
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir;
  std::vector<std::string> inputs;
  std::string aliases_path, styles_dir;
  int multiplier = 10;
  std::uint64_t seed = 0;
  std::string plan_text = "numeric,procedural,impostor";
  double jitter_band = 0.05;
  int max_attempts = 64;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory for content-addressed stage results");
  };
  auto add_inputs = [&](CLI::App* sub, const char* what) {
    sub->add_option("inputs", inputs, what)->required();
  };

  auto* parse_cmd = app.add_subcommand("parse", "parse decks and report diagnostics");
  add_inputs(parse_cmd, "deck files or directories");
  add_out(parse_cmd);

  auto* extract_cmd = app.add_subcommand("extract-ir", "extract the semantic IR of decks");
  add_inputs(extract_cmd, "deck files or directories");
  add_out(extract_cmd);

  auto* flatten_cmd = app.add_subcommand("flatten", "canonicalize IRs");
  add_inputs(flatten_cmd, "decks, directories or IR JSON lines");
  flatten_cmd->add_option("--aliases", aliases_path, "material alias table (JSON)");
  add_out(flatten_cmd);

  auto* diversify_cmd = app.add_subcommand("diversify", "generate equivalent IR variants");
  add_inputs(diversify_cmd, "decks, directories or IR JSON lines");
  diversify_cmd->add_option("--multiplier", multiplier, "variants per input")->capture_default_str()->check(
      CLI::PositiveNumber);
  diversify_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  diversify_cmd->add_option("--jitter-band", jitter_band, "relative equivalence band")->capture_default_str();
  diversify_cmd->add_option("--max-attempts", max_attempts, "attempts per variant slot")->capture_default_str();
  diversify_cmd->add_option("--aliases", aliases_path, "material alias table (JSON)");
  add_out(diversify_cmd);

  auto* render_cmd = app.add_subcommand("render", "render instruction, reasoning steps and code");
  add_inputs(render_cmd, "decks, directories or IR JSON lines");
  render_cmd->add_option("--styles", styles_dir, "directory of paraphrase style templates");
  render_cmd->add_option("--aliases", aliases_path, "material alias table (JSON)");
  add_out(render_cmd);

  auto* dpo_cmd = app.add_subcommand("build-dpo", "build validated preference pairs");
  add_inputs(dpo_cmd, "decks, directories or IR JSON lines");
  dpo_cmd->add_option("--multiplier", multiplier, "variants per input")->capture_default_str()->check(
      CLI::PositiveNumber);
  dpo_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  dpo_cmd->add_option("--plan", plan_text, "comma-separated violation plan")->capture_default_str();
  dpo_cmd->add_option("--jitter-band", jitter_band, "relative equivalence band")->capture_default_str();
  dpo_cmd->add_option("--max-attempts", max_attempts, "attempts per variant slot")->capture_default_str();
  dpo_cmd->add_option("--styles", styles_dir, "directory of paraphrase style templates");
  dpo_cmd->add_option("--aliases", aliases_path, "material alias table (JSON)");
  add_out(dpo_cmd);

  bool strict = false, permissive = false;
  std::vector<std::string> resolve;
  auto* check_cmd = app.add_subcommand("check", "syntax and ordering check of one deck");
  check_cmd->add_option("file", inputs, "deck file")->required()->expected(1);
  auto* strict_flag = check_cmd->add_flag("--strict", strict, "unknown commands are errors (default)");
  check_cmd->add_flag("--permissive", permissive, "unknown commands are warnings")->excludes(strict_flag);
  check_cmd->add_option("--resolve", resolve, "placeholder constant name=value (repeatable)");
  add_out(check_cmd);

  std::string cases_path, gens_path, k_text = "1,3";
  bool strict_missing = false, empty_pass = false, eval_strict = false;
  auto* eval_cmd = app.add_subcommand("eval", "Pass@k evaluation of generated decks");
  eval_cmd->add_option("--cases", cases_path, "cases.jsonl")->required();
  eval_cmd->add_option("--gens", gens_path, "generations.jsonl")->required();
  eval_cmd->add_option("--k", k_text, "comma-separated k values")->capture_default_str();
  eval_cmd->add_flag("--strict-missing", strict_missing, "missing generations are an error");
  eval_cmd->add_flag("--empty-pass", empty_pass, "treat empty candidates as vacuous passes");
  eval_cmd->add_flag("--strict", eval_strict, "check candidates in strict mode");
  add_out(eval_cmd);

  auto* testset_cmd = app.add_subcommand("testset", "render evaluation cases from decks");
  add_inputs(testset_cmd, "decks, directories or IR JSON lines");
  testset_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  testset_cmd->add_option("--styles", styles_dir, "directory of paraphrase style templates");
  add_out(testset_cmd);

  std::string docs_manifest, pipeline_sel = "both", client_kind = "mock", prompts_dir = "data/prompts";
  std::string source_kind_text = "user_guide";
  PipelineOptions popt;
  int backoff_ms = 200;
  bool do_dedup = false;
  MockConfig mock;
  HttpClientConfig http;
  auto* qa_cmd = app.add_subcommand("qa-gen", "generate Alpaca QA pairs from documents");
  qa_cmd->add_option("inputs", inputs, "plain-text documents or directories");
  qa_cmd->add_option("--manifest", docs_manifest, "JSON lines {doc_id, path, source_kind}");
  qa_cmd->add_option("--pipeline", pipeline_sel, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}))
      ->capture_default_str();
  qa_cmd->add_option("--client", client_kind, "mock or http")->check(CLI::IsMember({"mock", "http"}))
      ->capture_default_str();
  qa_cmd->add_option("--source-kind", source_kind_text, "kind of plain inputs")
      ->check(CLI::IsMember({"user_guide", "training_doc", "textbook"}))->capture_default_str();
  qa_cmd->add_option("--paraphrases", popt.paraphrases, "paraphrases per question")->capture_default_str();
  qa_cmd->add_option("--parallel", popt.parallelism, "segments in flight")->capture_default_str();
  qa_cmd->add_option("--retries", popt.max_retries, "retries per request")->capture_default_str();
  qa_cmd->add_option("--backoff-ms", backoff_ms, "initial retry delay")->capture_default_str();
  qa_cmd->add_option("--max-chars", popt.segmentation.max_chars, "maximum segment length")->capture_default_str();
  qa_cmd->add_option("--min-chars", popt.segmentation.min_chars, "minimum segment length")->capture_default_str();
  qa_cmd->add_flag("--dedup", do_dedup, "drop normalized duplicate pairs");
  qa_cmd->add_option("--prompts", prompts_dir, "prompt template directory")->capture_default_str();
  qa_cmd->add_option("--language", http.language, "answer language for prompts")->capture_default_str();
  qa_cmd->add_option("--endpoint", http.endpoint, "http client base URL")->capture_default_str();
  qa_cmd->add_option("--path", http.path, "http client request path")->capture_default_str();
  qa_cmd->add_option("--model", http.model, "http client model name");
  qa_cmd->add_option("--api-key-env", http.api_key_env, "environment variable holding the API key")
      ->capture_default_str();
  qa_cmd->add_option("--mock-qa", mock.qa_per_segment, "mock: QAs per segment")->capture_default_str();
  qa_cmd->add_option("--mock-keywords", mock.max_keywords, "mock: keywords per segment")->capture_default_str();
  qa_cmd->add_option("--mock-qa-per-keyword", mock.qa_per_keyword, "mock: QAs per keyword")->capture_default_str();
  add_out(qa_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      return run_stage(*parse_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<json> rows;
        for (const auto& f : files) {
          const ParseResult r = parse_deck(f.bytes);
          rows.push_back({{"file", f.path},
                          {"ok", r.ok()},
                          {"commands", r.commands.size()},
                          {"canonical", r.ok() ? unparse(r.commands) : std::string()},
                          {"diagnostics", diagnostics_json(r.diagnostics)}});
          for (const auto& d : r.diagnostics) out.messages.push_back(format_diagnostic(f.path, d));
          if (!r.ok()) out.status = kExitFail;
        }
        out.files["parse.jsonl"] = jsonl(rows);
        out.primary = "parse.jsonl";
        return out;
      });
    }

    if (extract_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      return run_stage(*extract_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<json> rows;
        for (const auto& n : load_irs(files, out)) {
          rows.push_back({{"file", n.name}, {"ir", ir_to_json(n.ir)}, {"fact_card", fact_card_to_json(compute_fact_card(n.ir))}});
        }
        out.files["ir.jsonl"] = jsonl(rows);
        out.primary = "ir.jsonl";
        return out;
      });
    }

    if (flatten_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      const AliasTable aliases = load_aliases(aliases_path);
      return run_stage(*flatten_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<json> rows;
        for (const auto& n : load_irs(files, out)) {
          const DeckIR flat = flatten_ir(n.ir, aliases);
          rows.push_back({{"file", n.name}, {"ir", ir_to_json(flat)}, {"fact_card", fact_card_to_json(compute_fact_card(flat))}});
        }
        out.files["flat.jsonl"] = jsonl(rows);
        out.primary = "flat.jsonl";
        return out;
      });
    }

    if (diversify_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      const AliasTable aliases = load_aliases(aliases_path);
      return run_stage(*diversify_cmd, out_dir, files, [&] {
        StageOutput out;
        DiversifyOptions opt;
        opt.jitter.band = jitter_band;
        opt.max_attempts = max_attempts;
        opt.aliases = &aliases;
        std::vector<json> rows;
        json warnings = json::array();
        for (const auto& n : load_irs(files, out)) {
          const DiversificationBatch b = diversify(flatten_ir(n.ir, aliases), multiplier, seed, opt);
          for (std::size_t i = 0; i < b.variants.size(); ++i) {
            const auto& v = b.variants[i];
            json log = json::array();
            for (const auto& t : v.transforms) log.push_back(transform_to_json(t));
            rows.push_back({{"file", n.name},
                            {"parent_id", b.parent_id},
                            {"index", i},
                            {"attempt", v.attempt},
                            {"transforms", log},
                            {"ir", ir_to_json(v.ir)}});
          }
          for (const auto& w : b.warnings) {
            warnings.push_back(n.name + ": " + w);
            out.messages.push_back("warning: " + n.name + ": " + w);
          }
        }
        out.files["variants.jsonl"] = jsonl(rows);
        out.primary = "variants.jsonl";
        out.manifest_extra["warnings"] = warnings;
        return out;
      });
    }

    if (render_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      const AliasTable aliases = load_aliases(aliases_path);
      const StyleLibrary styles = load_styles(styles_dir);
      return run_stage(*render_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<json> rows;
        for (const auto& n : load_irs(files, out)) {
          const DeckIR flat = flatten_ir(n.ir, aliases);
          const RenderedSample s = render_sample(flat, styles);
          json variants = json::array();
          for (const auto& v : s.variants) variants.push_back({{"style", v.style}, {"text", v.text}});
          rows.push_back({{"file", n.name},
                          {"ir_id", ir_id(flat)},
                          {"instruction", s.instruction},
                          {"cot", s.cot},
                          {"code", s.code},
                          {"variants", variants},
                          {"whitelist", s.whitelist.values}});
        }
        out.files["samples.jsonl"] = jsonl(rows);
        out.primary = "samples.jsonl";
        return out;
      });
    }

    if (dpo_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      const AliasTable aliases = load_aliases(aliases_path);
      const StyleLibrary styles = load_styles(styles_dir);
      DpoBuildOptions opt;
      try {
        opt.plan = parse_plan(plan_text);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (opt.plan.empty()) throw UsageError("empty --plan");
      opt.multiplier = multiplier;
      opt.seed = seed;
      opt.diversify.jitter.band = jitter_band;
      opt.diversify.max_attempts = max_attempts;
      opt.diversify.aliases = &aliases;
      opt.styles = &styles;
      return run_stage(*dpo_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<DpoSource> sources;
        for (auto& n : load_irs(files, out)) sources.push_back({n.name, flatten_ir(n.ir, aliases)});
        if (out.failed) return out;
        const DpoBuildResult built = build_dpo(sources, opt);
        const SerializedDpo ser = serialize_dpo(built.records);
        out.files["dpo.jsonl"] = ser.jsonl;
        out.primary = "dpo.jsonl";
        out.manifest_extra["dpo"] = ser.manifest;
        out.manifest_extra["warnings"] = built.warnings;
        out.manifest_extra["quarantined"] = built.quarantined.size();
        if (!built.quarantined.empty()) {
          std::vector<json> rows;
          for (const auto& q : built.quarantined) rows.push_back({{"id", q.id}, {"reason", q.reason}, {"record", q.record}});
          out.quarantine["quarantine.jsonl"] = jsonl(rows);
          out.messages.push_back("warning: " + std::to_string(built.quarantined.size()) + " records quarantined");
        }
        out.messages.push_back(std::to_string(built.records.size()) + " records written");
        return out;
      });
    }

    if (check_cmd->parsed()) {
      const auto files = load_inputs(inputs, {});
      const ConstantMap constants = parse_resolutions(resolve);
      const CheckMode mode = permissive ? CheckMode::kPermissive : CheckMode::kStrict;
      return run_stage(*check_cmd, out_dir, files, [&] {
        StageOutput out;
        const auto& f = files.front();
        const CheckReport report =
            constants.empty() ? check_syntax(f.bytes, mode) : check_with_resolution(f.bytes, constants, mode);
        for (const auto& d : report.diagnostics) out.messages.push_back(format_diagnostic(f.path, d));
        out.messages.push_back(f.path + ": " + to_string(report.verdict));
        json j = report_to_json(report);
        j["file"] = f.path;
        out.files["report.json"] = j.dump(2) + "\n";
        out.primary = "report.json";
        out.status = is_pass(report.verdict) ? kExitOk : kExitFail;
        return out;
      });
    }

    if (eval_cmd->parsed()) {
      const std::vector<InputFile> files = {{cases_path, read_bytes(cases_path)}, {gens_path, read_bytes(gens_path)}};
      EvalOptions opt;
      opt.k_values = parse_k_list(k_text);
      opt.strict_missing = strict_missing;
      opt.empty_is_pass = empty_pass;
      opt.mode = eval_strict ? CheckMode::kStrict : CheckMode::kPermissive;
      std::vector<InstructionCase> cases;
      std::vector<GenerationSet> gens;
      try {
        cases = read_jsonl(files[0].bytes, case_from_json);
        gens = read_jsonl(files[1].bytes, generation_from_json);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (cases.empty()) throw UsageError("no cases in '" + cases_path + "'");
      return run_stage(*eval_cmd, out_dir, files, [&] {
        StageOutput out;
        const EvalSummary s = evaluate(cases, gens, opt);
        for (const auto& w : s.warnings) out.messages.push_back("warning: " + w);
        out.files["summary.json"] = summary_to_json(s).dump(2) + "\n";
        out.files["table.txt"] = report_table(s);
        out.primary = "table.txt";
        return out;
      });
    }

    if (testset_cmd->parsed()) {
      const auto files = load_inputs(inputs, kDeckExts);
      const StyleLibrary styles = load_styles(styles_dir);
      return run_stage(*testset_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<DeckIR> irs;
        for (const auto& n : load_irs(files, out)) irs.push_back(flatten_ir(n.ir));
        if (out.failed) return out;
        std::vector<json> rows;
        for (const auto& c : render_testset(irs, seed, styles)) rows.push_back(case_to_json(c));
        out.files["cases.jsonl"] = jsonl(rows);
        out.primary = "cases.jsonl";
        return out;
      });
    }

    if (qa_cmd->parsed()) {
      std::vector<InputFile> files;
      std::vector<SourceDocument> docs;
      const SourceKind default_kind = *parse_source_kind(source_kind_text);
      if (!docs_manifest.empty()) {
        const std::string text = read_bytes(docs_manifest);
        files.push_back({docs_manifest, text});
        const fs::path base = fs::path(docs_manifest).parent_path();
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          json j;
          try {
            j = json::parse(line);
          } catch (const std::exception& e) {
            throw UsageError(docs_manifest + ": " + e.what());
          }
          const std::string path = (base / j.at("path").get<std::string>()).string();
          const auto kind = parse_source_kind(j.value("source_kind", source_kind_text));
          if (!kind) throw UsageError("unknown source_kind in " + docs_manifest);
          InputFile f{path, read_bytes(path)};
          docs.push_back({j.value("doc_id", fs::path(path).stem().string()), f.bytes, *kind});
          files.push_back(std::move(f));
        }
      }
      if (!inputs.empty()) {
        for (auto& f : load_inputs(inputs, {".txt", ".md"})) {
          docs.push_back({fs::path(f.path).stem().string(), f.bytes, default_kind});
          files.push_back(std::move(f));
        }
      }
      if (docs.empty()) throw UsageError("qa-gen needs documents (positional inputs or --manifest)");
      popt.backoff = std::chrono::milliseconds(backoff_ms);
      std::unique_ptr<GeneratorClient> client;
      if (client_kind == "mock") {
        client = std::make_unique<MockGeneratorClient>(mock);
      } else {
        if (http.model.empty()) throw UsageError("--model is required with --client http");
        client = std::make_unique<HttpGeneratorClient>(http, PromptLibrary::load(prompts_dir));
      }
      return run_stage(*qa_cmd, out_dir, files, [&] {
        StageOutput out;
        std::vector<std::string> log;
        const auto segments = segment_documents(docs, popt.segmentation, &log);
        std::vector<QaPair> pairs;
        if (pipeline_sel != "2") {
          auto r = run_pipeline1(segments, *client, popt);
          std::move(r.pairs.begin(), r.pairs.end(), std::back_inserter(pairs));
          std::move(r.log.begin(), r.log.end(), std::back_inserter(log));
        }
        if (pipeline_sel != "1") {
          auto r = run_pipeline2(segments, *client, popt);
          std::move(r.pairs.begin(), r.pairs.end(), std::back_inserter(pairs));
          std::move(r.log.begin(), r.log.end(), std::back_inserter(log));
        }
        const std::size_t before = pairs.size();
        if (do_dedup) pairs = dedup(std::move(pairs));
        const auto [qa, lineage] = serialize_qa(pairs);
        out.files["qa.jsonl"] = qa;
        out.files["lineage.jsonl"] = lineage;
        std::string log_text;
        for (const auto& l : log) log_text += l + "\n";
        out.files["log.txt"] = log_text;
        out.primary = "qa.jsonl";
        out.manifest_extra["segments"] = segments.size();
        out.manifest_extra["pairs"] = pairs.size();
        out.manifest_extra["deduplicated"] = before - pairs.size();
        out.messages.push_back(std::to_string(pairs.size()) + " pairs from " + std::to_string(segments.size()) +
                               " segments");
        return out;
      });
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
