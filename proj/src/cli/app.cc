// Copyright 2026 The GEM Embedding Authors.
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

#include "gem/cli/app.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "gem/error.h"
#include "gem/eval.h"
#include "gem/gemcore.h"
#include "gem/simd/kernels.h"
#include "gem/textproc.h"
#include "gem/vecstore.h"
#include "json.hpp"

namespace gem::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonFlags {
  std::vector<std::string> vectors;
  std::size_t m = 7;
  std::size_t k = 45;
  std::size_t h = 17;
  int t = 3;
  std::string rerank = "sigma";
  std::string removal = "sdr";
  std::string oov = "hash";
  std::string weighting = "gem";
  std::string scores = "nsu";
  bool no_lowercase = false;
  std::size_t threads = 0;  // 0: GEM_THREADS, then hardware concurrency
  std::string manifest;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  // --h is a model parameter here, so help is long-form only.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--vectors", f.vectors,
                  "Word vector file; repeat to concatenate sources in order")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--m", f.m, "Context window radius")->capture_default_str();
  cmd->add_option("--K", f.k, "Candidate corpus principal directions")
      ->capture_default_str();
  cmd->add_option("--h", f.h, "Directions selected per sentence")
      ->capture_default_str();
  cmd->add_option("--t", f.t, "Singular value exponent of coarse embeddings")
      ->capture_default_str();
  cmd->add_option("--rerank", f.rerank, "Direction re-ranking score")
      ->check(CLI::IsMember({"sigma", "plain"}))
      ->capture_default_str();
  cmd->add_option("--removal", f.removal, "Principal component removal")
      ->check(CLI::IsMember({"sdr", "sir", "none"}))
      ->capture_default_str();
  cmd->add_option("--oov", f.oov, "Out-of-vocabulary policy")
      ->check(CLI::IsMember({"hash", "zero", "skip"}))
      ->capture_default_str();
  cmd->add_option("--weighting", f.weighting,
                  "Word weights: gem scores or uniform (plain sum)")
      ->check(CLI::IsMember({"gem", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--scores", f.scores,
                  "Enabled scores: any of n (novelty), s (significance), "
                  "u (uniqueness)")
      ->capture_default_str();
  cmd->add_flag("--no-lowercase", f.no_lowercase, "Keep token case");
  cmd->add_option("--threads", f.threads,
                  "Worker threads (default: GEM_THREADS or all cores)");
  cmd->add_option("--manifest", f.manifest, "Write the run manifest here");
}

GemConfig ToConfig(const CommonFlags& f) {
  GemConfig cfg;
  cfg.window_radius = f.m;
  cfg.candidate_directions = f.k;
  cfg.selected_directions = f.h;
  cfg.singular_exponent = f.t;
  cfg.rerank = f.rerank == "plain" ? RerankMode::kUnweighted
                                   : RerankMode::kSigmaWeighted;
  cfg.removal = f.removal == "sir"    ? RemovalMode::kSir
                : f.removal == "none" ? RemovalMode::kNone
                                      : RemovalMode::kSdr;
  cfg.weighting = f.weighting == "uniform" ? WeightingMode::kUniform
                                           : WeightingMode::kGem;
  if (f.scores.find_first_not_of("nsu") != std::string::npos) {
    throw UsageError("--scores accepts only the letters n, s and u");
  }
  cfg.scores.novelty = f.scores.find('n') != std::string::npos;
  cfg.scores.significance = f.scores.find('s') != std::string::npos;
  cfg.scores.uniqueness = f.scores.find('u') != std::string::npos;
  try {
    cfg.Validate();
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

OovPolicy ToOov(const CommonFlags& f) {
  if (f.oov == "zero") return {OovMode::kZeroVector};
  if (f.oov == "skip") return {OovMode::kSkipToken};
  return {OovMode::kHashToVocab};
}

std::size_t ResolveThreads(const CommonFlags& f) {
  if (f.threads > 0) return f.threads;
  if (const char* env = std::getenv("GEM_THREADS")) {
    std::size_t n = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
    throw UsageError("GEM_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

WordVectorStore LoadVectors(const std::vector<std::string>& paths) {
  std::vector<WordVectorStore> stores;
  for (const std::string& path : paths) {
    try {
      stores.push_back(WordVectorStore::LoadFile(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what(), 0);
    }
  }
  if (stores.size() == 1) return std::move(stores.front());
  return concat_stores(stores);
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

// Everything needed to reproduce the run, plus counters from the encode.
struct RunRecord {
  std::string command;
  CommonFlags flags;
  GemConfig cfg;
  OovPolicy oov;
  std::size_t threads = 1;
  ordered_json inputs = ordered_json::object();
  const WordVectorStore* store = nullptr;
  const EncodeResult* result = nullptr;
  std::size_t sentence_count = 0;
  double encode_seconds = 0.0;
};

ordered_json BuildManifest(const RunRecord& run) {
  ordered_json m;
  m["command"] = run.command;
  m["config"] = {
      {"m", run.cfg.window_radius},
      {"K", run.cfg.candidate_directions},
      {"h", run.cfg.selected_directions},
      {"t", run.cfg.singular_exponent},
      {"rerank", run.flags.rerank},
      {"removal", run.flags.removal},
      {"weighting", run.flags.weighting},
      {"scores", run.flags.scores},
  };
  m["tokenizer"] = {{"lowercase", !run.flags.no_lowercase}};
  m["oov_policy"] = run.flags.oov;
  m["inputs"] = run.inputs;
  m["inputs"]["vectors"] = run.flags.vectors;
  m["threads"] = run.threads;
  m["simd_backend"] = std::string(simd::backend_name(simd::active_backend()));
  if (run.store != nullptr) {
    m["vector_dim"] = run.store->dim();
    m["vocab_size"] = run.store->size();
  }
  m["sentence_count"] = run.sentence_count;
  if (run.result != nullptr) {
    const EncodeResult& r = *run.result;
    m["token_count"] = r.token_stats.tokens;
    m["oov_count"] = r.token_stats.oov;
    m["corpus_directions"] = r.model.size();
    m["warnings"] = {
        {"empty_sentences", r.empty_sentences.size()},
        {"skipped_oov_tokens", r.token_stats.skipped},
        {"duplicate_words",
         run.store != nullptr ? run.store->duplicate_count() : 0},
    };
    m["empty_sentence_indices"] = r.empty_sentences;
  }
  m["encode_seconds"] = run.encode_seconds;
  return m;
}

void WriteManifest(const ordered_json& manifest, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest " + path);
  out << manifest.dump(2) << '\n';
}

EncodeResult TimedEncode(RunRecord& run, std::span<const std::string> sentences,
                         const WordVectorStore& store, bool keep_scores) {
  TokenizerConfig tok{!run.flags.no_lowercase};
  const auto start = std::chrono::steady_clock::now();
  EncodeResult result = encode_corpus(sentences, store, tok, run.oov, run.cfg,
                                      {run.threads, keep_scores});
  run.encode_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  run.sentence_count = sentences.size();
  return result;
}

void WarnEmpty(const EncodeResult& result, std::ostream& err) {
  if (!result.empty_sentences.empty()) {
    err << "warning: " << result.empty_sentences.size()
        << " sentence(s) had no resolvable tokens and were encoded as zero\n";
  }
}

struct EncodeFlags {
  CommonFlags common;
  std::string input;
  std::string output;
};

int RunEncode(const EncodeFlags& f, std::ostream& err) {
  RunRecord run{"encode", f.common, ToConfig(f.common), ToOov(f.common),
                ResolveThreads(f.common)};
  run.inputs["input"] = f.input;
  run.inputs["output"] = f.output;
  const WordVectorStore store = LoadVectors(f.common.vectors);
  const std::vector<std::string> sentences = ReadLines(f.input);
  const EncodeResult result = TimedEncode(run, sentences, store, false);
  run.store = &store;
  run.result = &result;

  std::ofstream out(f.output, std::ios::binary);
  if (!out) throw Error("cannot write " + f.output);
  std::string line;
  for (std::size_t i = 0; i < result.embeddings.size(); ++i) {
    line = std::to_string(i);
    for (double x : result.embeddings[i].vector) {
      line.push_back('\t');
      line += format_shortest(x);
    }
    line.push_back('\n');
    out << line;
  }
  out.close();
  if (!out) throw Error("failed writing " + f.output);

  WriteManifest(BuildManifest(run), f.common.manifest.empty()
                                        ? f.output + ".manifest.json"
                                        : f.common.manifest);
  WarnEmpty(result, err);
  return kExitOk;
}

struct StsFlags {
  CommonFlags common;
  std::string pairs;
  std::string layout = "simple3";
};

int RunSts(const StsFlags& f, std::ostream& out, std::ostream& err) {
  RunRecord run{"sts", f.common, ToConfig(f.common), ToOov(f.common),
                ResolveThreads(f.common)};
  run.inputs["pairs"] = f.pairs;
  run.inputs["layout"] = f.layout;
  std::ifstream in = OpenInput(f.pairs);
  const std::vector<SimilarityPair> pairs = parse_sts(
      in, f.layout == "stsb7" ? StsLayout::kStsb7 : StsLayout::kSimple3);
  if (pairs.size() < 2) throw DataError("need at least two sentence pairs");
  const WordVectorStore store = LoadVectors(f.common.vectors);

  // Both sides of every pair form the corpus.
  std::vector<std::string> sentences;
  sentences.reserve(2 * pairs.size());
  for (const SimilarityPair& p : pairs) sentences.push_back(p.sent_a);
  for (const SimilarityPair& p : pairs) sentences.push_back(p.sent_b);
  const EncodeResult result = TimedEncode(run, sentences, store, false);
  run.store = &store;
  run.result = &result;

  std::vector<Vector> a;
  std::vector<Vector> b;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    a.push_back(result.embeddings[i].vector);
    b.push_back(result.embeddings[pairs.size() + i].vector);
  }
  const double score = sts_eval(pairs, a, b);

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", score);
  const ordered_json manifest = BuildManifest(run);
  out << "pearson_x100\t" << buf << '\n' << manifest.dump(2) << '\n';
  if (!f.common.manifest.empty()) WriteManifest(manifest, f.common.manifest);
  WarnEmpty(result, err);
  return kExitOk;
}

struct RankFlags {
  CommonFlags common;
  std::string queries;
  std::string candidates;
};

int RunRank(const RankFlags& f, std::ostream& out, std::ostream& err) {
  RunRecord run{"rank", f.common, ToConfig(f.common), ToOov(f.common),
                ResolveThreads(f.common)};
  run.inputs["queries"] = f.queries;
  run.inputs["candidates"] = f.candidates;
  std::ifstream qin = OpenInput(f.queries);
  std::ifstream cand_in = OpenInput(f.candidates);
  const std::vector<RankingQuery> queries = parse_ranking(qin, cand_in);
  if (queries.empty()) throw DataError("no queries in " + f.queries);
  const WordVectorStore store = LoadVectors(f.common.vectors);

  std::vector<std::string> sentences;
  for (const RankingQuery& q : queries) sentences.push_back(q.original);
  for (const RankingQuery& q : queries) {
    for (const Candidate& c : q.candidates) sentences.push_back(c.text);
  }
  const EncodeResult result = TimedEncode(run, sentences, store, false);
  run.store = &store;
  run.result = &result;

  std::vector<Vector> query_embeds;
  std::vector<std::vector<Vector>> candidate_embeds(queries.size());
  std::size_t next = queries.size();
  for (std::size_t i = 0; i < queries.size(); ++i) {
    query_embeds.push_back(result.embeddings[i].vector);
    for (std::size_t c = 0; c < queries[i].candidates.size(); ++c) {
      candidate_embeds[i].push_back(result.embeddings[next++].vector);
    }
  }
  const double map = map_eval(queries, query_embeds, candidate_embeds);

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", map);
  const ordered_json manifest = BuildManifest(run);
  out << "map\t" << buf << '\n' << manifest.dump(2) << '\n';
  if (!f.common.manifest.empty()) WriteManifest(manifest, f.common.manifest);
  WarnEmpty(result, err);
  return kExitOk;
}

struct WeightsFlags {
  CommonFlags common;
  std::string sentence;
  std::string corpus;
};

int RunWeights(const WeightsFlags& f, std::ostream& out) {
  RunRecord run{"weights", f.common, ToConfig(f.common), ToOov(f.common),
                ResolveThreads(f.common)};
  TokenizerConfig tok{!f.common.no_lowercase};
  if (tokenize(f.sentence, tok).empty()) {
    throw UsageError("--sentence has no word tokens");
  }
  run.inputs["sentence"] = f.sentence;
  if (!f.corpus.empty()) run.inputs["corpus"] = f.corpus;
  const WordVectorStore store = LoadVectors(f.common.vectors);

  std::vector<std::string> sentences{f.sentence};
  if (!f.corpus.empty()) {
    for (std::string& line : ReadLines(f.corpus)) {
      sentences.push_back(std::move(line));
    }
  }
  const EncodeResult result = TimedEncode(run, sentences, store, true);
  run.store = &store;
  run.result = &result;
  const SentenceEmbedding& e = result.embeddings.front();
  if (e.tokens.empty()) {
    throw DataError("no token of --sentence resolved to a word vector");
  }

  std::vector<std::size_t> order(e.tokens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return e.scores[a].total > e.scores[b].total;
  });
  out << "token\talpha_n\talpha_s\talpha_u\talpha\n";
  char buf[160];
  for (std::size_t i : order) {
    const WordScores& s = e.scores[i];
    std::snprintf(buf, sizeof(buf), "\t%.3f\t%.3f\t%.3f\t%.3f\n", s.novelty,
                  s.significance, s.uniqueness, s.total);
    out << e.tokens[i] << buf;
  }
  const ordered_json manifest = BuildManifest(run);
  if (!f.common.manifest.empty()) WriteManifest(manifest, f.common.manifest);
  return kExitOk;
}

}  // namespace

std::string format_shortest(double value) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Geometric sentence embeddings from pre-trained word vectors",
               "gem"};
  app.require_subcommand(1);

  EncodeFlags encode;
  CLI::App* encode_cmd =
      app.add_subcommand("encode", "Embed one sentence per input line");
  AddCommonFlags(encode_cmd, encode.common);
  encode_cmd->add_option("--input", encode.input, "Sentences, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  encode_cmd->add_option("--output", encode.output, "Embedding TSV to write")
      ->required();

  StsFlags sts;
  CLI::App* sts_cmd =
      app.add_subcommand("sts", "Pearson x 100 of cosine scores vs gold");
  AddCommonFlags(sts_cmd, sts.common);
  sts_cmd->add_option("--pairs", sts.pairs, "Scored sentence pairs (TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  sts_cmd->add_option("--layout", sts.layout, "Pair file layout")
      ->check(CLI::IsMember({"simple3", "stsb7"}))
      ->capture_default_str();

  RankFlags rank;
  rank.common.m = 6;
  rank.common.h = 15;
  rank.common.rerank = "plain";
  CLI::App* rank_cmd =
      app.add_subcommand("rank", "MAP of cosine re-ranking of candidates");
  AddCommonFlags(rank_cmd, rank.common);
  rank_cmd->add_option("--queries", rank.queries, "query_id<TAB>text rows")
      ->required()
      ->check(CLI::ExistingFile);
  rank_cmd
      ->add_option("--candidates", rank.candidates,
                   "query_id<TAB>label<TAB>text rows")
      ->required()
      ->check(CLI::ExistingFile);

  WeightsFlags weights;
  CLI::App* weights_cmd =
      app.add_subcommand("weights", "Per-word scores of one sentence");
  AddCommonFlags(weights_cmd, weights.common);
  weights_cmd->add_option("--sentence", weights.sentence, "Sentence to score")
      ->required();
  weights_cmd->add_option("--corpus", weights.corpus,
                          "Extra sentences (one per line) for the corpus fit");

  std::vector<const char*> argv{"gem"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (encode_cmd->parsed()) return RunEncode(encode, err);
    if (sts_cmd->parsed()) return RunSts(sts, out, err);
    if (rank_cmd->parsed()) return RunRank(rank, out, err);
    if (weights_cmd->parsed()) return RunWeights(weights, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace gem::cli
