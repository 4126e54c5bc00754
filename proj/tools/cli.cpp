#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ontoforge/error.hpp"
#include "ontoforge/pipeline.hpp"
#include "ontoforge/ranking.hpp"
#include "ontoforge/retrieval.hpp"

namespace ontoforge::cli {

namespace {

using ojson = nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadHyperparam:
    case ErrorKind::BadWeights:
    case ErrorKind::BadRank:
      return kUsageError;
    case ErrorKind::QueryEmpty:
    case ErrorKind::EmptyOntology:
      return kEmptyResult;
    default:
      return kRuntimeError;
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

struct BuildArgs {
  std::string backend = "lsi";
  std::string input;
  std::string stopwords;
  std::string output;
  std::string turtle;
  BuildConfig config;
};

struct RebuildArgs {
  std::string model;
  std::string input;
  std::string stopwords;
  std::string output;
  std::string turtle;
};

struct QueryArgs {
  std::string model;
  std::string lexicon;
  std::string stopwords;
  std::vector<std::string> words;
  bool json = false;
};

struct RankArgs {
  std::string measures;
  std::vector<std::string> models;
  std::string query;
  std::string stopwords;
  std::vector<double> weights;
  bool normalize = false;
  bool json = false;
};

struct ExportArgs {
  std::string model;
  std::string format;
  std::string output;
};

void print_summary(std::ostream& out, const OntologyGraph& g, const BuildSummary& s, const std::string& path) {
  out << "backend:     " << to_string(g.backend()) << '\n'
      << "documents:   " << s.documents << '\n'
      << "vocabulary:  " << s.vocabulary << '\n'
      << (g.backend() == Backend::Lsi ? "concepts:    " : "topics:      ") << s.concepts << '\n'
      << "terms:       " << g.term_nodes().size() << '\n'
      << "wall time:   " << fixed(s.seconds, 3) << " s\n"
      << "model:       " << path << '\n';
}

int cmd_build(const BuildArgs& a, std::ostream& out) {
  BuildConfig config = a.config;
  config.backend = *parse_backend(a.backend);
  config.input = a.input;
  config.stopwords = a.stopwords;
  validate(config);
  const auto result = build_ontology(config);
  save_json(result.graph, a.output);
  if (!a.turtle.empty()) export_turtle(result.graph, a.turtle);
  print_summary(out, result.graph, result.summary, a.output);
  return kSuccess;
}

int cmd_rebuild(const RebuildArgs& a, std::ostream& out) {
  const auto previous = load_json(a.model);
  BuildConfig config = config_from_provenance(previous);
  config.input = a.input;
  config.stopwords = a.stopwords;
  const auto result = build_ontology(config);
  save_json(result.graph, a.output);
  if (!a.turtle.empty()) export_turtle(result.graph, a.turtle);
  print_summary(out, result.graph, result.summary, a.output);
  if (result.graph.provenance().corpus_digest == previous.provenance().corpus_digest)
    out << "corpus unchanged since previous build\n";
  return kSuccess;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const auto graph = load_json(a.model);
  const auto lexicon = a.lexicon.empty() ? SynonymLexicon{} : SynonymLexicon::load(a.lexicon);
  const auto stopwords = a.stopwords.empty() ? StopWords{} : load_stopwords(a.stopwords);
  std::string query;
  for (const auto& w : a.words) query += (query.empty() ? "" : " ") + w;

  const auto result = detect_topics(query, graph, lexicon, stopwords);
  if (a.json) {
    ojson doc;
    doc["query"] = query;
    ojson terms = ojson::array();
    for (const auto& t : result.terms) {
      ojson topics = ojson::array();
      for (const auto& h : t.topics)
        topics.push_back(ojson{{"concept_id", h.concept_id}, {"label", h.label}, {"weight", h.weight}});
      terms.push_back(ojson{{"query_term", t.query_term},
                            {"matched", t.matched ? ojson(*t.matched) : ojson(nullptr)},
                            {"membership", t.membership},
                            {"topics", std::move(topics)}});
    }
    doc["terms"] = std::move(terms);
    doc["misses"] = result.misses;
    doc["score"] = result.score;
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& t : result.terms) {
      if (!t.matched) {
        out << t.query_term << ": no match\n";
        continue;
      }
      out << t.query_term << " -> " << *t.matched << " (mu=" << fixed(t.membership, 2) << ")\n";
      for (const auto& h : t.topics) out << "  " << h.label << "  weight=" << fixed(h.weight, 6) << '\n';
    }
    out << "score: " << fixed(result.score, 4) << '\n';
  }
  return result.matched_count() > 0 ? kSuccess : kEmptyResult;
}

int cmd_rank(const RankArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, MeasureVector>> rows;
  if (!a.measures.empty()) {
    rows = load_measures_csv(a.measures);
  } else {
    const auto stopwords = a.stopwords.empty() ? StopWords{} : load_stopwords(a.stopwords);
    const auto terms = prune(tokenize(a.query), stopwords);
    if (terms.empty()) fail(ErrorKind::QueryEmpty, "query has no terms after stop-word pruning");
    for (const auto& path : a.models) {
      const auto g = load_json(path);
      rows.emplace_back(std::filesystem::path(path).stem().string(), measure_ontology(g, terms));
    }
  }
  RankWeights weights;
  if (!a.weights.empty()) weights = RankWeights{a.weights[0], a.weights[1], a.weights[2], a.weights[3]};
  const auto result = rank_ontologies(rows, weights, a.normalize);

  if (a.json) {
    ojson doc = ojson::array();
    for (const auto& e : result.entries)
      doc.push_back(ojson{{"name", e.name},
                          {"cmm", e.measures.cmm},
                          {"dem", e.measures.dem},
                          {"ssm", e.measures.ssm},
                          {"bem", e.measures.bem},
                          {"score", e.score},
                          {"rank", e.rank}});
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  std::size_t width = 8;
  for (const auto& e : result.entries) width = std::max(width, e.name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "ontology" << "  cmm     dem     ssm     bem     score   rank\n";
  for (const auto& e : result.entries) {
    out << std::left << std::setw(static_cast<int>(width)) << e.name << "  " << fixed(e.measures.cmm, 3) << "   "
        << fixed(e.measures.dem, 3) << "   " << fixed(e.measures.ssm, 3) << "   " << fixed(e.measures.bem, 3) << "   "
        << fixed(e.score, 4) << "  " << e.rank << '\n';
  }
  return kSuccess;
}

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const auto graph = load_json(a.model);
  if (a.format == "turtle") {
    export_turtle(graph, a.output);
  } else {
    save_json(graph, a.output);
  }
  out << "wrote " << a.output << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn terminology ontologies from text corpora and query them"};
  app.name(args.empty() ? "ontoforge" : args[0]);
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Learn an ontology from a directory of .txt files");
  b->add_option("--backend", build.backend, "lsi or lda")->check(CLI::IsMember({"lsi", "lda"}))->capture_default_str();
  b->add_option("--input,-i", build.input, "Corpus directory")->required();
  b->add_option("--stopwords", build.stopwords, "Stop-word file, one word per line");
  b->add_option("--output,-o", build.output, "Model JSON to write")->required();
  b->add_option("--turtle", build.turtle, "Also export Turtle to this path");
  b->add_option("--concepts,-k", build.config.concepts, "[lsi] concepts to extract; 0 = one per document")
      ->capture_default_str();
  b->add_option("--tau", build.config.tau, "[lsi] membership threshold on |U*S| loadings")->capture_default_str();
  b->add_option("--topics", build.config.topics, "[lda] number of topics")->capture_default_str();
  b->add_option("--alpha", build.config.alpha, "[lda] symmetric Dirichlet prior; default 50/topics");
  b->add_option("--seed", build.config.seed, "[lda] initialization seed")->capture_default_str();
  b->add_option("--shards", build.config.shards, "[lda] E-step shards")->capture_default_str();
  b->add_option("--max-iters", build.config.max_iterations, "[lda] EM iteration cap")->capture_default_str();
  b->add_option("--tol", build.config.tolerance, "[lda] relative ELBO change to stop at")->capture_default_str();
  b->add_option("--smoothing", build.config.smoothing, "[lda] topic-word pseudo-count")->capture_default_str();
  b->add_option("--words", build.config.words_per_topic, "[lda] words attached per topic")->capture_default_str();
  b->add_option("--min-prob", build.config.min_prob, "[lda] minimum word probability to attach")
      ->capture_default_str();

  RebuildArgs rebuild;
  auto* rb = app.add_subcommand("rebuild", "Re-learn an ontology with a previous model's hyperparameters");
  rb->add_option("--model,-m", rebuild.model, "Previous model JSON")->required();
  rb->add_option("--input,-i", rebuild.input, "Corpus directory")->required();
  rb->add_option("--stopwords", rebuild.stopwords, "Stop-word file");
  rb->add_option("--output,-o", rebuild.output, "Model JSON to write")->required();
  rb->add_option("--turtle", rebuild.turtle, "Also export Turtle to this path");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Detect the topics of a query's words");
  q->add_option("--model,-m", query.model, "Model JSON")->required();
  q->add_option("--lexicon", query.lexicon, "Synonym lexicon TSV (term, synonym, rank)");
  q->add_option("--stopwords", query.stopwords, "Stop-word file");
  q->add_flag("--json", query.json, "Machine-readable output");
  q->add_option("query", query.words, "Query text")->required();

  RankArgs rank;
  auto* r = app.add_subcommand("rank", "Rank ontologies by weighted CMM/DEM/SSM/BEM score");
  auto* measures_opt = r->add_option("--measures", rank.measures, "CSV of name,cmm,dem,ssm,bem");
  auto* models_opt = r->add_option("--model,-m", rank.models, "Model JSON (repeatable)");
  r->add_option("--query,-q", rank.query, "Query used to measure the models");
  r->add_option("--stopwords", rank.stopwords, "Stop-word file for the query");
  r->add_option("--weights", rank.weights, "cmm,dem,ssm,bem weights (default 0.3,0.2,0.4,0.1)")
      ->delimiter(',')
      ->expected(4);
  r->add_flag("--normalize", rank.normalize, "Divide each measure by its maximum across ontologies");
  r->add_flag("--json", rank.json, "Machine-readable output");
  measures_opt->excludes(models_opt);

  ExportArgs exp;
  auto* e = app.add_subcommand("export", "Write a model as Turtle or JSON");
  e->add_option("--model,-m", exp.model, "Model JSON")->required();
  e->add_option("--format,-f", exp.format, "turtle or json")->required()->check(CLI::IsMember({"turtle", "json"}));
  e->add_option("--output,-o", exp.output, "Output path")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("ontoforge");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (r->parsed()) {
      if (rank.measures.empty() && rank.models.empty())
        throw CLI::ValidationError("rank", "one of --measures or --model is required");
      if (!rank.models.empty() && rank.query.empty())
        throw CLI::ValidationError("rank", "--query is required with --model");
    }
  } catch (const CLI::Error& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (b->parsed()) return cmd_build(build, out);
    if (rb->parsed()) return cmd_rebuild(rebuild, out);
    if (q->parsed()) return cmd_query(query, out);
    if (r->parsed()) return cmd_rank(rank, out);
    if (e->parsed()) return cmd_export(exp, out);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex.kind());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace ontoforge::cli
