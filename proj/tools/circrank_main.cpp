// circrank: aggregate pairwise preference data by circulation removal.
//
// Subcommands: aggregate (strong partial order and friends), kemeny,
// minmax, compare, reduce-fas, rand.  Set CIRCRANK_LOG=1 for diagnostics on
// stderr.  Exit codes: 0 success, 1 bad input, 2 size limit exceeded,
// 3 internal consistency failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "circrank/circrank.hpp"
#include "circrank/serialize.hpp"

namespace {

using namespace circrank;

bool log_enabled() {
  const char* value = std::getenv("CIRCRANK_LOG");
  return value != nullptr && *value != '\0';
}

void log_line(const std::string& message) {
  if (log_enabled()) std::cerr << "[circrank] " << message << '\n';
}

struct Options {
  std::string input;
  std::string input_format = "pairwise";  // pairwise | ballots
  std::string format = "text";            // text | json | dot
  std::string method = "strong";  // strong | algorithm1 | kemeny | relax-kem |
                                  // minmax | compare
  std::string output;
  bool oracle = false;
  int max_n = 9;
  std::uint64_t limit = std::uint64_t{1} << 24;
};

VoteGraph load_graph(const Options& opts) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!opts.input.empty() && opts.input != "-") {
    file.open(opts.input);
    if (!file) throw parse_error("cannot open input file '" + opts.input + "'");
    in = &file;
  }
  VoteGraph g = opts.input_format == "ballots" ? read_ballot_file(*in)
                                               : read_pairwise_csv(*in);
  std::ostringstream msg;
  msg << "loaded " << g.node_count() << " alternatives, " << g.arc_count()
      << " arcs (total weight " << g.total_weight() << ")";
  log_line(msg.str());
  return g;
}

void emit(const Options& opts, const std::string& text) {
  if (opts.output.empty() || opts.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) throw parse_error("cannot open output file '" + opts.output + "'");
  out << text;
}

std::string label_pair_list(const VoteGraph& g, const ArcSet& arcs) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Arc& a : arcs) pairs.emplace_back(g.label(a.tail), g.label(a.head));
  std::sort(pairs.begin(), pairs.end());
  std::string out;
  for (const auto& [from, to] : pairs) {
    if (!out.empty()) out += ' ';
    out += "(" + from + "," + to + ")";
  }
  return out.empty() ? "(none)" : out;
}

json graph_summary(const VoteGraph& g) {
  std::vector<std::string> nodes = g.labels();
  std::sort(nodes.begin(), nodes.end());
  return json{{"alternatives", nodes},
              {"arc_count", g.arc_count()},
              {"total_weight", g.total_weight().str()}};
}

json strong_section(const VoteGraph& g, const StrongResult& result) {
  json section;
  section["max_circulation_value"] = result.max_value.str();
  section["strong_arcs"] = serialize_detail::arc_pairs(g, result.strong_arcs);
  section["circulation"] = circulation_json(g, result.circulation);
  PartialOrder order = transitive_closure(g, result.strong_arcs);
  section["order"] = order_json(order)["order"];
  if (result.duals) {
    Certificate cert = check_strong_cs(g, result.circulation, *result.duals);
    if (!cert.pass) {
      throw internal_error("strong certificate failed verification");
    }
    section["certificate"] = certificate_json(g, cert);
  }
  return section;
}

json oracle_section(const VoteGraph& g, const Options& opts,
                    const std::optional<Rational>& claimed_value,
                    const ArcSet* claimed_strong) {
  EnumerationBudget budget{opts.limit};
  json section;
  Rational value = oracle_max_circulation_value(g, budget);
  section["max_circulation_value"] = value.str();
  bool agrees = true;
  if (claimed_value) agrees = agrees && *claimed_value == value;
  if (claimed_strong) {
    ArcSet strong = oracle_strong_arcs(g, budget);
    section["strong_arcs"] = serialize_detail::arc_pairs(g, strong);
    agrees = agrees && strong == *claimed_strong;
  }
  section["agrees"] = agrees;
  if (!agrees) throw internal_error("oracle cross-check disagreed with the solver");
  return section;
}

std::string render_order_text(const VoteGraph& g, const StrongResult& result) {
  PartialOrder order = transitive_closure(g, result.strong_arcs);
  std::ostringstream os;
  os << "alternatives: " << g.node_count() << "\n";
  os << "max circulation value: " << result.max_value << "\n";
  os << "strong arcs: " << label_pair_list(g, result.strong_arcs) << "\n";
  os << "order: " << label_pair_list(g, order.relation()) << "\n";
  if (result.duals) {
    Certificate cert = check_strong_cs(g, result.circulation, *result.duals);
    os << "certificate: " << (cert.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

int run_strong(const Options& opts) {
  VoteGraph g = load_graph(opts);
  StrongResult result =
      opts.method == "algorithm1" ? reference_algorithm(g) : perturbation(g);
  if (opts.format == "dot") {
    PartialOrder order = transitive_closure(g, result.strong_arcs);
    emit(opts, to_dot(order, result.strong_arcs));
    return 0;
  }
  if (opts.format == "json") {
    json doc;
    doc["method"] = opts.method;
    doc["input"] = graph_summary(g);
    doc.update(strong_section(g, result));
    if (opts.oracle) {
      doc["oracle"] =
          oracle_section(g, opts, result.max_value, &result.strong_arcs);
    }
    emit(opts, doc.dump(2) + "\n");
    return 0;
  }
  std::string text = render_order_text(g, result);
  if (opts.oracle) {
    json cross = oracle_section(g, opts, result.max_value, &result.strong_arcs);
    text += "oracle: value " + cross["max_circulation_value"].get<std::string>() +
            ", agrees\n";
  }
  emit(opts, text);
  return 0;
}

int run_kemeny(const Options& opts) {
  VoteGraph g = load_graph(opts);
  KemenyResult kemeny = kemeny_exact(g, opts.max_n);
  RelaxKemResult relaxed = relax_kem(g);
  json doc = kemeny_json(kemeny, g, relaxed);
  if (opts.oracle) {
    doc["oracle"] = oracle_section(g, opts, relaxed.objective, nullptr);
  }
  if (opts.format == "json") {
    emit(opts, doc.dump(2) + "\n");
    return 0;
  }
  if (opts.format == "dot") throw parse_error("dot output needs an order method");
  std::ostringstream os;
  os << "kemeny weight: " << kemeny.removed_weight << "\n";
  os << "optimal orders: " << kemeny.best_orders.size() << "\n";
  os << "first order:";
  for (const std::string& alt : kemeny.best_orders.front()) os << ' ' << alt;
  os << "\n";
  os << "relaxed objective: " << relaxed.objective << "\n";
  if (opts.oracle) os << "oracle: agrees\n";
  emit(opts, os.str());
  return 0;
}

int run_relax_kem(const Options& opts) {
  VoteGraph g = load_graph(opts);
  RelaxKemResult relaxed = relax_kem(g);
  json doc{{"relax_kem", {{"objective", relaxed.objective.str()},
                          {"scores", duals_json(g, relaxed.scores)}}}};
  if (opts.oracle) {
    doc["oracle"] = oracle_section(g, opts, relaxed.objective, nullptr);
  }
  if (opts.format == "json") {
    emit(opts, doc.dump(2) + "\n");
    return 0;
  }
  if (opts.format == "dot") throw parse_error("dot output needs an order method");
  std::ostringstream os;
  os << "relaxed objective: " << relaxed.objective << "\n";
  std::vector<std::string> nodes = g.labels();
  std::sort(nodes.begin(), nodes.end());
  for (const std::string& node : nodes) {
    os << "score " << node << ": " << relaxed.scores[g.index_of(node)] << "\n";
  }
  emit(opts, os.str());
  return 0;
}

json conflict_json(const VoteGraph& g, const std::optional<ConflictWitness>& witness) {
  if (!witness) return nullptr;
  std::vector<Rational> first(witness->first.begin(), witness->first.end());
  std::vector<Rational> second(witness->second.begin(), witness->second.end());
  return json{{"pair", json::array({witness->tail_label, witness->head_label})},
              {"first", circulation_json(g, first)},
              {"second", circulation_json(g, second)}};
}

int run_minmax(const Options& opts) {
  VoteGraph g = load_graph(opts);
  MinMaxResult result = minmax_exact(g, opts.limit);
  std::optional<ConflictWitness> witness = demonstrate_conflict(g, opts.limit);
  json doc = minmax_json(g, result);
  doc["conflict"] = conflict_json(g, witness);
  if (opts.oracle) {
    doc["oracle"] = oracle_section(g, opts, std::nullopt, nullptr);
  }
  if (opts.format == "json") {
    emit(opts, doc.dump(2) + "\n");
    return 0;
  }
  if (opts.format == "dot") throw parse_error("dot output needs an order method");
  std::ostringstream os;
  os << "minmax weight: " << result.weight << "\n";
  os << "optimal circulations: " << result.circulations.size() << "\n";
  if (witness) {
    os << "conflicting pair: (" << witness->tail_label << ","
       << witness->head_label << ")\n";
  } else {
    os << "conflicting pair: none\n";
  }
  emit(opts, os.str());
  return 0;
}

int run_compare(const Options& opts) {
  VoteGraph g = load_graph(opts);
  StrongResult strong = perturbation(g);
  PartialOrder strong_order = transitive_closure(g, strong.strong_arcs);
  KemenyResult kemeny = kemeny_exact(g, opts.max_n);
  RelaxKemResult relaxed = relax_kem(g);
  MinMaxResult minmax = minmax_exact(g, opts.limit);
  std::optional<ConflictWitness> witness = demonstrate_conflict(g, opts.limit);

  // How each minmax optimum's induced order relates to the strong order.
  json minmax_vs_strong = json::array();
  for (const auto& x : minmax.circulations) {
    std::vector<Rational> flow(x.begin(), x.end());
    PartialOrder induced = transitive_closure(g, remaining_arcs(g, flow));
    minmax_vs_strong.push_back(
        serialize_detail::arc_pairs(g, conflicts(induced, strong_order)));
  }

  json doc;
  doc["method"] = "compare";
  doc["input"] = graph_summary(g);
  doc["strong"] = strong_section(g, strong);
  doc.update(kemeny_json(kemeny, g, relaxed));
  doc["minmax"] = minmax_json(g, minmax);
  doc["minmax"]["conflict"] = conflict_json(g, witness);
  doc["relations"] = {
      {"kemeny_weight", kemeny.removed_weight.str()},
      {"minmax_weight", minmax.weight},
      {"kemeny_le_minmax", kemeny.removed_weight <= Rational(minmax.weight)},
      {"relaxed_equals_max_circulation",
       relaxed.objective == strong.max_value},
      {"strong_order_conflicts_per_minmax_optimum", minmax_vs_strong}};
  if (opts.oracle) {
    doc["oracle"] = oracle_section(g, opts, strong.max_value, &strong.strong_arcs);
  }
  if (opts.format == "json") {
    emit(opts, doc.dump(2) + "\n");
    return 0;
  }
  if (opts.format == "dot") {
    emit(opts, to_dot(strong_order, strong.strong_arcs));
    return 0;
  }
  std::ostringstream os;
  os << render_order_text(g, strong);
  os << "kemeny weight: " << kemeny.removed_weight << "\n";
  os << "minmax weight: " << minmax.weight << "\n";
  if (witness) {
    os << "minmax conflict pair: (" << witness->tail_label << ","
       << witness->head_label << ")\n";
  } else {
    os << "minmax conflict pair: none\n";
  }
  emit(opts, os.str());
  return 0;
}

int run_reduce_fas(const Options& opts) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!opts.input.empty() && opts.input != "-") {
    file.open(opts.input);
    if (!file) throw parse_error("cannot open input file '" + opts.input + "'");
    in = &file;
  }
  FasInstance instance = read_fas_file(*in);
  ReducedInstance reduced = reduce_fas(instance);
  std::ostringstream os;
  os << "# K' = " << reduced.k_prime << "\n";
  write_pairwise_csv(reduced.graph, os);
  emit(opts, os.str());
  return 0;
}

struct RandOptions {
  std::uint64_t seed = 1;
  int nodes = 0;  // 0 keeps the default 2..8 range
  long long max_cap = 3;
  unsigned arc_permille = 500;
};

int run_rand(const Options& opts, const RandOptions& rand_opts) {
  RandomGraphParams params;
  params.max_capacity = rand_opts.max_cap;
  params.arc_permille = rand_opts.arc_permille;
  if (rand_opts.nodes > 0) {
    params.min_nodes = params.max_nodes = rand_opts.nodes;
  }
  VoteGraph g = random_vote_graph(rand_opts.seed, params);
  std::ostringstream os;
  os << "# seed = " << rand_opts.seed << "\n";
  write_pairwise_csv(g, os);
  emit(opts, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preference aggregation by circulation removal"};
  app.require_subcommand(1);

  Options opts;
  RandOptions rand_opts;

  auto add_io = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input) {
      cmd->add_option("input", opts.input, "input file ('-' for stdin)")
          ->required();
    }
    cmd->add_option("--output", opts.output, "output file (default stdout)");
    return cmd;
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input-format", opts.input_format, "pairwise | ballots")
        ->check(CLI::IsMember({"pairwise", "ballots"}));
    cmd->add_option("--format", opts.format, "text | json | dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_flag("--oracle", opts.oracle,
                  "append an exhaustive-search cross-check");
    cmd->add_option("--max-n", opts.max_n,
                    "alternative limit for factorial search (default 9)");
    cmd->add_option("--limit", opts.limit,
                    "enumeration budget for brute-force searches");
    return cmd;
  };

  CLI::App* aggregate = add_common(add_io(
      app.add_subcommand("aggregate", "compute the strong partial order"), true));
  aggregate->add_option("--method", opts.method,
                        "strong | algorithm1 | kemeny | relax-kem | minmax | compare")
      ->check(CLI::IsMember(
          {"strong", "algorithm1", "kemeny", "relax-kem", "minmax", "compare"}));

  CLI::App* kemeny = add_common(add_io(
      app.add_subcommand("kemeny", "exact Kemeny plus the relaxed scores"), true));
  CLI::App* minmax = add_common(add_io(
      app.add_subcommand("minmax", "minimum maximal circulations"), true));
  CLI::App* compare = add_common(add_io(
      app.add_subcommand("compare", "run every method and relate them"), true));
  CLI::App* reduce = add_io(
      app.add_subcommand("reduce-fas", "emit the circulation instance of a FAS"),
      true);
  CLI::App* rand_cmd = add_io(
      app.add_subcommand("rand", "generate a seeded random instance"), false);
  rand_cmd->add_option("--seed", rand_opts.seed, "generator seed");
  rand_cmd->add_option("--nodes", rand_opts.nodes, "exact node count");
  rand_cmd->add_option("--max-cap", rand_opts.max_cap, "capacity upper bound");
  rand_cmd->add_option("--arc-permille", rand_opts.arc_permille,
                       "arc probability in 1/1000");

  CLI11_PARSE(app, argc, argv);

  try {
    if (aggregate->parsed()) {
      if (opts.method == "kemeny") return run_kemeny(opts);
      if (opts.method == "relax-kem") return run_relax_kem(opts);
      if (opts.method == "minmax") return run_minmax(opts);
      if (opts.method == "compare") return run_compare(opts);
      return run_strong(opts);
    }
    if (kemeny->parsed()) return run_kemeny(opts);
    if (minmax->parsed()) return run_minmax(opts);
    if (compare->parsed()) return run_compare(opts);
    if (reduce->parsed()) return run_reduce_fas(opts);
    if (rand_cmd->parsed()) return run_rand(opts, rand_opts);
  } catch (const size_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
