#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "phonostad/alignment.hpp"
#include "phonostad/augment.hpp"
#include "phonostad/cognet.hpp"
#include "phonostad/embeddings.hpp"
#include "phonostad/error.hpp"
#include "phonostad/ipa.hpp"
#include "phonostad/lexicon.hpp"
#include "phonostad/manifest.hpp"
#include "phonostad/phonotasks.hpp"
#include "phonostad/probe.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/stats.hpp"
#include "phonostad/syllabify.hpp"
#include "phonostad/tokenization.hpp"
#include "phonostad/util.hpp"

namespace fs = std::filesystem;
using namespace phonostad;
using Json = nlohmann::ordered_json;

namespace {

fs::path data_dir() {
  if (const char* env = std::getenv("PHONOSTAD_DATA"); env && *env) return env;
  return PHONOSTAD_DEFAULT_DATA;
}

fs::path resource(const std::string& given, const char* fallback) {
  return given.empty() ? data_dir() / fallback : fs::path(given);
}

std::string format_summary(const Json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [k, v] : j.items()) out << csv_field(k) << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return out.str();
}

std::string lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += s + "\n";
  return out;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

void finish(OutputSet& out, RunManifest& manifest) {
  manifest.stamp();
  out.write("manifest.json", manifest.to_json());
  out.commit();
}

// ---------------------------------------------------------------- stad

struct StadArgs {
  std::string tokenizer, pretokenized, words, syllables, lexicon, onsets, out;
  double threshold = 0.25;
  std::size_t split_size = 1000;
  std::uint64_t seed = 0;
  bool no_leading_space = false;
  int min_syllables = 1;
};

Json cmd_stad(const StadArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "stad";
  manifest.seed = a.seed;
  manifest.flags = {{"threshold", format_double(a.threshold)},
                    {"split-size", std::to_string(a.split_size)},
                    {"leading-space", a.no_leading_space ? "false" : "true"},
                    {"min-syllables", std::to_string(a.min_syllables)}};

  const auto lex_path = resource(a.lexicon, "cmudict.dict");
  const auto words_path = resource(a.words, "wordlist-en-10000.txt");
  const auto syl_path = resource(a.syllables, "syllables.tsv");
  const auto onset_path = resource(a.onsets, "onsets.txt");
  for (const auto& p : {lex_path, words_path, syl_path, onset_path}) manifest.add_input(p);

  const auto lex = load_cmu_dict(lex_path);
  const auto words = load_wordlist(words_path);
  const auto syl_lex = SyllabificationLexicon::load(syl_path);
  const auto onsets = OnsetTable::load(onset_path);

  TokenSource tok;
  std::optional<TokenizerSpec> spec;
  std::unordered_map<std::string, TokenSegmentation> table;
  if (!a.pretokenized.empty()) {
    manifest.flags["pretokenized"] = a.pretokenized;
    manifest.add_input(a.pretokenized);
    table = load_pretokenized(a.pretokenized);
    tok = [&table](const std::string& w) {
      const auto it = table.find(w);
      if (it == table.end()) throw MissingWordError(w);
      return it->second;
    };
  } else {
    const fs::path dir = resource(a.tokenizer, "gpt2");
    manifest.flags["tokenizer"] = dir.string();
    manifest.add_input(dir / "vocab.json");
    manifest.add_input(dir / "merges.txt");
    spec = load_bpe(dir / "vocab.json", dir / "merges.txt", true, dir.filename().string());
    const bool space = !a.no_leading_space;
    tok = [&spec, space](const std::string& w) { return tokenize_word(*spec, w, space); };
  }
  const SyllableSource syl = [&](const std::string& w) { return syllabify(w, lex, syl_lex, onsets); };

  const auto scored_opt = score_words(words, tok, syl, a.min_syllables);
  std::vector<StadScore> scored;
  for (const auto& s : scored_opt) {
    if (s) scored.push_back(*s);
  }
  PartitionConfig cfg;
  cfg.threshold = a.threshold;
  cfg.size = a.split_size;
  cfg.seed = a.seed;
  cfg.min_syllables = a.min_syllables;
  const auto part = partition_scored(scored, cfg);

  std::set<std::string> in_a(part.aligned.begin(), part.aligned.end());
  std::set<std::string> in_m(part.misaligned.begin(), part.misaligned.end());
  std::ostringstream csv;
  csv << "word,stad,v_tok,v_syl,group\n";
  double total = 0, total_a = 0, total_m = 0;
  for (const auto& s : scored) {
    const char* group = in_a.count(s.word) ? "A" : in_m.count(s.word) ? "M" : "none";
    csv << csv_field(s.word) << ',' << s.stad.str() << ',' << format_split_vector(s.v_tok) << ','
        << format_split_vector(s.v_syl) << ',' << group << '\n';
    total += s.stad.value();
    if (*group == 'A') total_a += s.stad.value();
    if (*group == 'M') total_m += s.stad.value();
  }

  Json summary;
  summary["words_in"] = words.size();
  summary["words_scored"] = scored.size();
  summary["mean_stad"] = scored.empty() ? 0.0 : total / static_cast<double>(scored.size());
  summary["aligned_candidates"] = part.aligned_candidates;
  summary["misaligned_candidates"] = part.misaligned_candidates;
  summary["aligned"] = part.aligned.size();
  summary["misaligned"] = part.misaligned.size();
  summary["mean_stad_A"] = total_a / static_cast<double>(std::max<std::size_t>(1, part.aligned.size()));
  summary["mean_stad_M"] = total_m / static_cast<double>(std::max<std::size_t>(1, part.misaligned.size()));
  summary["pronunciation_variant"] = "first listed";
  summary["leading_space"] = !a.no_leading_space;

  OutputSet out(a.out);
  out.write("stad.csv", csv.str());
  out.write("A.txt", lines(part.aligned));
  out.write("M.txt", lines(part.misaligned));
  out.write("summary.json", json_text(summary));
  finish(out, manifest);
  return summary;
}

// ---------------------------------------------------------------- probe

struct ProbeArgs {
  std::string embeddings, labels, task = "rhyme", control = "none", out;
  std::vector<std::string> compare;
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  std::vector<double> alphas{10, 100, 500, 1000, 2000};
  double c = 10;
};

std::string depth_label(int depth) { return std::to_string(depth) + "%"; }

Json cmd_probe(const ProbeArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "probe";
  manifest.seed = a.seed;
  manifest.flags = {{"task", a.task}, {"control", a.control}, {"seeds", std::to_string(a.seeds)},
                    {"C", format_double(a.c)}};
  std::vector<std::string> alpha_text;
  for (const double x : a.alphas) alpha_text.push_back(format_double(x));
  manifest.flags["alphas"] = join(alpha_text, " ");
  manifest.add_input_dir(a.embeddings);

  const auto task = parse_probe_task(a.task);
  ProbeConfig cfg;
  cfg.alphas = a.alphas;
  cfg.logistic_c = a.c;
  cfg.seeds.clear();
  for (std::size_t i = 0; i < a.seeds; ++i) cfg.seeds.push_back(i);
  cfg.validate();

  const auto layers = load_embedding_dir(a.embeddings);
  if (layers.empty()) throw LoadError("no .phoemb matrices in " + a.embeddings);

  ProbeReport report;
  report.task = a.task;
  report.model_name = layers.front().model_name;
  report.config = cfg;
  report.stratified = cfg.stratify && label_kind(task) == LabelKind::binary;
  Json summary;
  summary["task"] = a.task;
  summary["layers"] = layers.size();

  if (!a.compare.empty()) {
    if (a.compare.size() != 2) throw DomainError("--compare takes two label files");
    manifest.flags["compare"] = a.compare[0] + " " + a.compare[1];
    for (const auto& f : a.compare) manifest.add_input(f);
    const auto la = load_task_labels(a.compare[0], task);
    const auto lm = load_task_labels(a.compare[1], task);
    for (const auto& layer : layers) {
      const auto ra = run_protocol(select_rows(layer, la.ids), la, cfg);
      const auto rm = run_protocol(select_rows(layer, lm.ids), lm, cfg);
      std::optional<double> p;
      try {
        const auto va = ra.metrics(), vm = rm.metrics();
        if (va.size() == vm.size()) p = paired_t_test(va, vm, true).p_value;
      } catch (const DegenerateTestError&) {
      }
      report.records.push_back({depth_label(layer.layer_depth), "A", ra, p});
      report.records.push_back({depth_label(layer.layer_depth), "M", rm, p});
    }
  } else {
    if (a.labels.empty()) throw DomainError("--labels is required unless --compare is given");
    manifest.add_input(a.labels);
    const auto raw = load_task_labels(a.labels, task);
    const auto& first = layers.front();
    const auto labels = align_labels(raw, first.ids, first.rows());
    const auto splits = make_splits(labels, cfg);

    std::optional<ProtocolResult> baseline;
    if (a.control == "random-embedding") {
      const auto ctrl = random_embeddings(static_cast<std::size_t>(first.rows()), static_cast<std::size_t>(first.cols()),
                                          derive_seed(a.seed, "control/embedding"));
      baseline = run_protocol(ctrl.data, labels, cfg, &splits);
    }
    for (const auto& layer : layers) {
      const auto aligned = align_labels(raw, layer.ids, layer.rows());
      if (aligned.ids != labels.ids) throw AlignmentError("layers disagree on row order");
      const auto result = run_protocol(layer.data, labels, cfg, &splits);
      std::optional<double> p;
      if (baseline) {
        try {
          p = paired_t_test(result.metrics(), baseline->metrics(), true).p_value;
        } catch (const Error&) {
        }
      }
      report.records.push_back({depth_label(layer.layer_depth), "probe", result, p});
      if (a.control == "random-label") {
        const auto shuffled = random_labels(labels.kind, static_cast<std::size_t>(labels.size()),
                                            derive_seed(a.seed, "control/label", static_cast<std::uint64_t>(layer.layer_depth)));
        report.records.push_back({depth_label(layer.layer_depth), "random-label", run_protocol(layer.data, shuffled, cfg), {}});
      }
    }
    if (baseline) report.records.push_back({"baseline", "random-embedding", *baseline, {}});
  }

  auto& rows = summary["results"] = Json::array();
  for (const auto& r : report.records) {
    rows.push_back({{"layer", r.layer}, {"condition", r.condition}, {"mean", r.result.mean}, {"std", r.result.std}});
  }
  OutputSet out(a.out);
  out.write("probe.csv", report.to_csv());
  out.write("probe.json", report.to_json());
  finish(out, manifest);
  summary.erase("results");
  summary["records"] = report.records.size();
  return summary;
}

// ---------------------------------------------------------------- dataset

struct DatasetArgs {
  std::string task = "rhyme", lexicon, words, pairs, out;
  std::uint64_t seed = 0;
  std::size_t positives = 200, negatives = 200, size = 2000;
};

Json cmd_dataset(const DatasetArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "dataset";
  manifest.seed = a.seed;
  manifest.flags = {{"task", a.task}};
  const auto lex_path = resource(a.lexicon, "cmudict.dict");
  const auto words_path = resource(a.words, "wordlist-en-10000.txt");
  manifest.add_input(lex_path);
  manifest.add_input(words_path);
  const auto lex = load_cmu_dict(lex_path);
  const auto words = load_wordlist(words_path);

  Json summary;
  summary["pronunciation_variant"] = "first listed";
  summary["task"] = a.task;
  OutputSet out(a.out);
  const auto tmp = fs::temp_directory_path() / ("phonostad-dataset-" + std::to_string(::getpid()) + ".csv");
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove(p); }
  } cleanup{tmp};
  if (a.task == "rhyme") {
    std::vector<RhymePair> pairs;
    if (!a.pairs.empty()) {
      // Imported pairs keep their labels; disagreements with the rhyme rule are reported.
      manifest.add_input(a.pairs);
      manifest.flags["pairs"] = a.pairs;
      pairs = read_rhyme_csv(a.pairs);
      std::size_t disagree = 0;
      for (const auto& p : pairs) disagree += is_perfect_rhyme(p.word1, p.word2, lex) != p.label;
      summary["imported"] = true;
      summary["rule_disagreements"] = disagree;
    } else {
      manifest.flags["positives"] = std::to_string(a.positives);
      manifest.flags["negatives"] = std::to_string(a.negatives);
      pairs = build_rhyme_dataset(lex, words, a.positives, a.negatives, a.seed);
    }
    write_rhyme_csv(tmp, pairs);
    summary["rows"] = pairs.size();
    summary["positives"] = std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.label; });
    out.write("rhyme.csv", read_file(tmp));
  } else if (a.task == "g2p") {
    manifest.flags["size"] = std::to_string(a.size);
    const auto rows = build_g2p_dataset(lex, words, a.size, a.seed);
    write_g2p_csv(tmp, rows);
    summary["rows"] = rows.size();
    out.write("g2p.csv", read_file(tmp));
  } else {
    throw DomainError("unknown dataset task '" + a.task + "'");
  }
  finish(out, manifest);
  return summary;
}

// ---------------------------------------------------------------- augment

struct AugmentArgs {
  std::string conversations, templates, rhyme, g2p, syllable, lexicon, ipa_map, out;
  std::uint64_t seed = 0;
};

Json cmd_augment(const AugmentArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "augment";
  manifest.seed = a.seed;
  const auto lex_path = resource(a.lexicon, "cmudict.dict");
  const auto map_path = resource(a.ipa_map, "ipa_arpabet.tsv");
  const auto tmpl_path = resource(a.templates, "templates.txt");
  for (const auto& p : {lex_path, map_path, tmpl_path}) manifest.add_input(p);
  const auto lex = load_cmu_dict(lex_path);
  const auto map = IpaArpabetMap::load(map_path);
  const auto templates = TemplateSet::load(tmpl_path);
  const AugmentContext ctx{lex, map, templates};

  std::string corpus;
  Json summary;
  if (!a.conversations.empty()) {
    manifest.add_input(a.conversations);
    manifest.flags["conversations"] = a.conversations;
    const auto convs = read_conversations(a.conversations);
    const auto outcomes = augment_conversations(convs, ctx, a.seed);
    std::size_t annotated = 0;
    for (const auto& o : outcomes) {
      corpus += to_jsonl(o.example);
      annotated += o.k_applied > 0;
    }
    summary["conversation"] = outcomes.size();
    summary["conversation_annotated"] = annotated;
  }
  auto emit = [&](const char* name, const TaskExamples& t) {
    for (const auto& e : t.examples) corpus += to_jsonl(e);
    summary[name] = t.examples.size();
    summary[std::string(name) + "_skipped"] = t.skipped;
  };
  std::vector<std::string> g2p_words;
  if (!a.rhyme.empty()) {
    manifest.add_input(a.rhyme);
    manifest.flags["rhyme"] = a.rhyme;
    emit("rhyme", make_rhyme_examples(read_rhyme_csv(a.rhyme), ctx, derive_seed(a.seed, "augment/rhyme-task")));
  }
  auto words_of = [](const std::string& path) {
    std::vector<std::string> w;
    for (const auto& r : read_g2p_csv(path)) w.push_back(r.word);
    return w;
  };
  if (!a.g2p.empty()) {
    manifest.add_input(a.g2p);
    manifest.flags["g2p"] = a.g2p;
    g2p_words = words_of(a.g2p);
    emit("g2p", make_g2p_examples(g2p_words, ctx, derive_seed(a.seed, "augment/g2p-task")));
  }
  const std::string syl_source = a.syllable.empty() ? a.g2p : a.syllable;
  if (!syl_source.empty()) {
    if (!a.syllable.empty()) manifest.add_input(a.syllable);
    manifest.flags["syllable"] = syl_source;
    emit("syllable", make_syllable_examples(words_of(syl_source), ctx, derive_seed(a.seed, "augment/syllable-task")));
  }
  OutputSet out(a.out);
  out.write("corpus.jsonl", corpus);
  out.write("counts.json", json_text(summary));
  finish(out, manifest);
  return summary;
}

// ---------------------------------------------------------------- per

std::map<std::string, Pronunciation> read_transcriptions(const std::string& path) {
  std::map<std::string, Pronunciation> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path, line_no, "expected id<TAB>phonemes");
    const std::string id(trim(std::string_view(line).substr(0, tab)));
    try {
      out[id] = parse_pronunciation(std::string_view(line).substr(tab + 1), false);
    } catch (const Error& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return out;
}

struct PerArgs {
  std::string refs, hyps, out;
};

Json cmd_per(const PerArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "per";
  manifest.add_input(a.refs);
  manifest.add_input(a.hyps);
  const auto refs = read_transcriptions(a.refs);
  const auto hyps = read_transcriptions(a.hyps);
  std::size_t edits = 0, ref_len = 0;
  std::ostringstream csv;
  csv << "id,edits,reference_length,per\n";
  for (const auto& [id, ref] : refs) {
    const auto it = hyps.find(id);
    if (it == hyps.end()) throw AlignmentError("hypothesis missing for '" + id + "'");
    const auto r = per(ref, it->second);
    edits += static_cast<std::size_t>(r.num);
    ref_len += static_cast<std::size_t>(r.den);
    csv << csv_field(id) << ',' << r.num << ',' << r.den << ',' << format_double(r.value()) << '\n';
  }
  if (hyps.size() != refs.size()) throw AlignmentError("hypotheses contain ids without a reference");
  if (ref_len == 0) throw DomainError("no reference transcriptions");
  Json summary;
  summary["items"] = refs.size();
  summary["edits"] = edits;
  summary["reference_phonemes"] = ref_len;
  summary["per"] = static_cast<double>(edits) / static_cast<double>(ref_len);
  if (!a.out.empty()) {
    OutputSet out(a.out);
    out.write("per.csv", csv.str());
    out.write("summary.json", json_text(summary));
    finish(out, manifest);
  }
  return summary;
}

// ---------------------------------------------------------------- cognet

struct CognetArgs {
  std::string db, groups, out;
  bool inclusive = false;
};

std::vector<std::string> read_group(const fs::path& path) {
  std::vector<std::string> out;
  for (const auto& line : read_lines(path)) {
    const auto w = trim(line);
    if (!w.empty()) out.emplace_back(w);
  }
  return out;
}

Json cmd_cognet(const CognetArgs& a) {
  RunManifest manifest;
  manifest.subcommand = "cognet";
  manifest.flags = {{"inclusive", a.inclusive ? "true" : "false"}};
  const fs::path dir(a.groups);
  manifest.add_input(a.db);
  manifest.add_input(dir / "A.txt");
  manifest.add_input(dir / "M.txt");
  const auto db = load_cognet(a.db);
  const auto result = group_relatedness(db, read_group(dir / "A.txt"), read_group(dir / "M.txt"), a.inclusive);
  std::ostringstream csv;
  csv << "word,group,relatedness\n";
  for (const auto& r : result.rows) csv << csv_field(r.word) << ',' << r.group << ',' << r.relatedness << '\n';
  Json summary;
  summary["db_sha256"] = manifest.inputs.at(a.db);
  summary["db_entries"] = db.size();
  summary["mean_A"] = result.mean_a;
  summary["mean_M"] = result.mean_m;
  OutputSet out(a.out);
  out.write("cognet.csv", csv.str());
  out.write("summary.json", json_text(summary));
  finish(out, manifest);
  return summary;
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const LoadError*>(&e)) return 3;
  if (dynamic_cast<const CapacityError*>(&e)) return 4;
  if (dynamic_cast<const AlignmentError*>(&e) || dynamic_cast<const DimensionError*>(&e)) return 5;
  if (dynamic_cast<const TemplateError*>(&e)) return 6;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tokenization/phonology alignment and probing toolkit"};
  app.set_version_flag("--version", std::string(toolkit_version()));
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Summary format on stdout")->check(CLI::IsMember({"csv", "json"}));

  StadArgs stad_args;
  auto* stad_cmd = app.add_subcommand("stad", "Score STAD per word and sample aligned/misaligned groups");
  auto* tok_opt = stad_cmd->add_option("--tokenizer", stad_args.tokenizer, "Directory with vocab.json and merges.txt");
  stad_cmd->add_option("--pretokenized", stad_args.pretokenized, "word<TAB>tokens file")->excludes(tok_opt);
  stad_cmd->add_option("--words", stad_args.words);
  stad_cmd->add_option("--syllables", stad_args.syllables, "Reference syllabification lexicon");
  stad_cmd->add_option("--lexicon", stad_args.lexicon, "CMU pronouncing dictionary");
  stad_cmd->add_option("--onsets", stad_args.onsets);
  stad_cmd->add_option("--threshold", stad_args.threshold);
  stad_cmd->add_option("--split-size", stad_args.split_size);
  stad_cmd->add_option("--seed", stad_args.seed);
  stad_cmd->add_option("--min-syllables", stad_args.min_syllables);
  stad_cmd->add_flag("--no-leading-space", stad_args.no_leading_space, "Tokenize without the leading-space marker");
  stad_cmd->add_option("--out", stad_args.out)->required();

  ProbeArgs probe_args;
  auto* probe_cmd = app.add_subcommand("probe", "Layer-wise linear probes with controls");
  probe_cmd->add_option("--embeddings", probe_args.embeddings, "Directory of .phoemb matrices")->required();
  probe_cmd->add_option("--labels", probe_args.labels, "rhyme.csv or g2p.csv");
  probe_cmd->add_option("--task", probe_args.task)->check(CLI::IsMember({"rhyme", "g2p", "syllable"}));
  probe_cmd->add_option("--control", probe_args.control)
      ->check(CLI::IsMember({"none", "random-embedding", "random-label"}));
  probe_cmd->add_option("--compare", probe_args.compare, "Two label files (A then M)")->expected(2);
  probe_cmd->add_option("--seeds", probe_args.seeds, "Number of split seeds");
  probe_cmd->add_option("--seed", probe_args.seed, "Seed for control draws");
  probe_cmd->add_option("--alphas", probe_args.alphas)->delimiter(',');
  probe_cmd->add_option("--C", probe_args.c, "Inverse L2 strength for the logistic probe");
  probe_cmd->add_option("--out", probe_args.out)->required();

  DatasetArgs dataset_args;
  auto* dataset_cmd = app.add_subcommand("dataset", "Build the rhyme or G2P probing dataset");
  dataset_cmd->add_option("--task", dataset_args.task)->check(CLI::IsMember({"rhyme", "g2p"}));
  dataset_cmd->add_option("--seed", dataset_args.seed);
  dataset_cmd->add_option("--lexicon", dataset_args.lexicon);
  dataset_cmd->add_option("--words", dataset_args.words);
  dataset_cmd->add_option("--positives", dataset_args.positives);
  dataset_cmd->add_option("--negatives", dataset_args.negatives);
  dataset_cmd->add_option("--size", dataset_args.size);
  dataset_cmd->add_option("--pairs", dataset_args.pairs, "Import a fixed word1,word2,label pair list instead of sampling");
  dataset_cmd->add_option("--out", dataset_args.out)->required();

  AugmentArgs augment_args;
  auto* augment_cmd = app.add_subcommand("augment", "Generate IPA-augmented instruction data");
  augment_cmd->add_option("--conversations", augment_args.conversations, "JSONL with question/answer");
  augment_cmd->add_option("--templates", augment_args.templates);
  augment_cmd->add_option("--rhyme", augment_args.rhyme, "rhyme.csv for rhyme QA");
  augment_cmd->add_option("--g2p", augment_args.g2p, "g2p.csv for G2P QA (and syllable QA unless --syllable)");
  augment_cmd->add_option("--syllable", augment_args.syllable, "g2p.csv-format word source for syllable QA");
  augment_cmd->add_option("--lexicon", augment_args.lexicon);
  augment_cmd->add_option("--ipa-map", augment_args.ipa_map);
  augment_cmd->add_option("--seed", augment_args.seed);
  augment_cmd->add_option("--out", augment_args.out)->required();

  PerArgs per_args;
  auto* per_cmd = app.add_subcommand("per", "Phoneme error rate of hypotheses against references");
  per_cmd->add_option("--refs", per_args.refs, "id<TAB>phonemes")->required();
  per_cmd->add_option("--hyps", per_args.hyps, "id<TAB>phonemes")->required();
  per_cmd->add_option("--out", per_args.out, "Optional directory for per.csv and the manifest");

  CognetArgs cognet_args;
  auto* cognet_cmd = app.add_subcommand("cognet", "Cognate/loanword counts for the A and M groups");
  cognet_cmd->add_option("--db", cognet_args.db)->required();
  cognet_cmd->add_option("--groups", cognet_args.groups, "Directory holding A.txt and M.txt")->required();
  cognet_cmd->add_flag("--inclusive", cognet_args.inclusive, "Count the query's own English rows");
  cognet_cmd->add_option("--out", cognet_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Json summary;
    if (*stad_cmd) summary = cmd_stad(stad_args);
    else if (*probe_cmd) summary = cmd_probe(probe_args);
    else if (*dataset_cmd) summary = cmd_dataset(dataset_args);
    else if (*augment_cmd) summary = cmd_augment(augment_args);
    else if (*per_cmd) summary = cmd_per(per_args);
    else if (*cognet_cmd) summary = cmd_cognet(cognet_args);
    std::cout << format_summary(summary, format);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "phonostad: " << e.what() << "\n";
    return exit_code(e);
  }
}
