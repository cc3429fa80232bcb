#include "cutlattice/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cutlattice/cli/predicate.hpp"
#include "cutlattice/cli/report.hpp"
#include "cutlattice/cli/runner.hpp"

namespace cutlattice::cli {

LoadedTrace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open trace '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedTrace t;
  try {
    t.document = parse_trace_document(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  t.name = t.document.name.value_or(std::filesystem::path(path).stem().string());
  return t;
}

namespace {

Computation build(const LoadedTrace& t, const std::string& path) {
  try {
    return to_computation(t.document);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct GenArgs {
  std::uint32_t processes = 0;
  std::uint32_t events = 0;
  double probability = 0.3;
  std::uint64_t seed = 0;
  std::string output;
  std::string name;
};

struct PartitionArgs {
  std::string trace;
  bool clocks = false;
};

struct TraverseArgs {
  std::string trace;
  std::string algorithm = "uniflow";
  std::string ranks = "all";
  std::string predicate;
  std::string mode = "count";
  std::size_t max_stored_cuts = 0;
  bool plain_successor = false;
};

struct VerifyArgs {
  std::string trace;
  std::string ranks = "all";
  std::optional<Rank> inject_fault;
};

struct BenchArgs {
  std::vector<std::string> traces;
  std::vector<std::string> algorithms = {"uniflow", "traditional", "brute"};
  std::vector<std::string> ranks = {"all"};
  unsigned repetitions = 1;
  std::string csv;
  std::size_t max_stored_cuts = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  TraceDocument doc = generate_random_document({a.processes, a.events, a.probability, a.seed});
  if (!a.name.empty()) doc.name = a.name;
  const std::string text = serialize_document(doc);
  if (a.output.empty() || a.output == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(a.output, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw InputError("cannot write '" + a.output + "'");
  return kExitOk;
}

int cmd_partition(const PartitionArgs& a, std::ostream& out) {
  const LoadedTrace t = load_trace(a.trace);
  const Computation comp = build(t, a.trace);
  const TimedPartition tp = partition_timed(comp);
  const UniflowPartition& p = tp.partition;
  out << "trace: " << t.name << '\n'
      << "n: " << comp.process_count() << '\n'
      << "events: " << comp.size() << '\n'
      << "n_u: " << p.chain_count() << '\n'
      << "chain sizes:";
  for (std::size_t pos = 0; pos < p.chain_count(); ++pos) out << ' ' << p.chain_length(pos);
  out << '\n' << "partition_s: " << tp.seconds << '\n';
  const bool ok = verify_uniflow(p);
  out << "uniflow check: " << (ok ? "pass" : "FAIL") << '\n';
  if (a.clocks) {
    for (std::size_t pos = 0; pos < p.chain_count(); ++pos) {
      for (Count k = 1; k <= p.chain_length(pos); ++k) {
        const Event& ev = comp.at(p.chain(pos)[k - 1]);
        out << "event " << ev.id.value << " chain " << pos + 1 << " index " << k << " uvc "
            << to_string(p.clock(pos, k)) << '\n';
      }
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_traverse(const TraverseArgs& a, std::ostream& out) {
  RunRequest req;
  req.algorithm = parse_algorithm(a.algorithm);
  req.mode = parse_output_mode(a.mode);
  validate_rank_spec(a.ranks);
  const LoadedTrace t = load_trace(a.trace);
  const Computation comp = build(t, a.trace);
  req.ranks = parse_rank_spec(a.ranks, comp.size());
  if (!a.predicate.empty()) req.predicate = parse_predicate(a.predicate, comp);
  if (a.max_stored_cuts > 0) req.max_stored_cuts = a.max_stored_cuts;
  req.traversal.plain_successor = a.plain_successor;
  if (req.mode == OutputMode::List) {
    req.on_cut = [&](const Cut& cut, Rank r) { out << "rank " << r << ": " << cut << '\n'; };
  }

  std::optional<TimedPartition> tp;
  if (req.algorithm == Algorithm::Uniflow) tp = partition_timed(comp);
  const RunReport report = run_traversal(comp, tp ? &*tp : nullptr, t.name, req);
  if (req.mode == OutputMode::FirstMatch && !report.match) out << "first match: none\n";
  print_report(out, report);
  return is_resource_failure(report) ? kExitResource : kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  validate_rank_spec(a.ranks);
  const LoadedTrace t = load_trace(a.trace);
  const Computation comp = build(t, a.trace);
  const RankRange range = parse_rank_spec(a.ranks, comp.size());
  const VerifyOutcome v = verify_enumerators(comp, range.hi, a.inject_fault);
  for (const auto& line : v.lines) out << line << '\n';
  if (!v.brute_checked) {
    out << "brute force skipped: " << comp.size() << " events exceeds " << kBruteForceEventLimit
        << '\n';
  }
  if (v.passed) {
    out << "verify: pass\n";
    return kExitOk;
  }
  out << "verify: FAIL, first divergent rank " << *v.first_divergent_rank << '\n';
  return kExitVerifyFailed;
}

RunReport failed_row(const std::string& algorithm, const std::string& trace, const std::string& why) {
  RunReport r;
  r.algorithm = algorithm;
  r.trace = trace;
  r.status = "error: " + why;
  return r;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<Algorithm> algorithms;
  for (const auto& name : a.algorithms) algorithms.push_back(parse_algorithm(name));
  for (const auto& spec : a.ranks) validate_rank_spec(spec);

  std::vector<RunReport> rows;
  for (const auto& path : a.traces) {
    std::optional<LoadedTrace> t;
    std::optional<Computation> comp;
    try {
      t = load_trace(path);
      comp = build(*t, path);
    } catch (const Error& e) {
      rows.push_back(failed_row("-", path, e.what()));
      continue;
    }
    std::optional<TimedPartition> tp;
    for (Algorithm algo : algorithms) {
      for (const auto& spec : a.ranks) {
        for (unsigned rep = 0; rep < a.repetitions; ++rep) {
          try {
            RunRequest req;
            req.algorithm = algo;
            req.ranks = parse_rank_spec(spec, comp->size());
            if (a.max_stored_cuts > 0) req.max_stored_cuts = a.max_stored_cuts;
            if (algo == Algorithm::Uniflow) tp = partition_timed(*comp);
            rows.push_back(run_traversal(*comp, tp ? &*tp : nullptr, t->name, req));
          } catch (const Error& e) {
            rows.push_back(failed_row(std::string(algorithm_name(algo)), t->name, e.what()));
          }
        }
      }
    }
  }
  if (!a.csv.empty()) {
    std::ofstream file(a.csv, std::ios::binary);
    if (!file || !(file << to_csv(rows)) || !file.flush()) {
      throw InputError("cannot write '" + a.csv + "'");
    }
  }
  print_table(out, rows);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enumerate the consistent cuts of a distributed computation"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random computation trace");
  gen->add_option("-n,--processes", gen_args.processes, "Process count")->required();
  gen->add_option("-e,--events", gen_args.events, "Total events")->required();
  gen->add_option("-p,--probability", gen_args.probability, "Message probability per event")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--output", gen_args.output, "Output path (default stdout)");
  gen->add_option("--name", gen_args.name, "Trace name header");

  PartitionArgs part_args;
  auto* part = app.add_subcommand("partition", "Build and report the uniflow chain partition");
  part->add_option("trace", part_args.trace, "Trace file")->required();
  part->add_flag("--clocks", part_args.clocks, "Dump the uniflow vector clocks");

  TraverseArgs trav_args;
  auto* trav = app.add_subcommand("traverse", "Enumerate consistent cuts");
  trav->add_option("trace", trav_args.trace, "Trace file")->required();
  trav->add_option("-a,--algo", trav_args.algorithm, "uniflow, traditional or brute")
      ->capture_default_str();
  trav->add_option("-r,--ranks", trav_args.ranks, "all, r, or r1..r2")->capture_default_str();
  trav->add_option("--predicate", trav_args.predicate, "Terms like 'p2>=2 & rank<=5'");
  trav->add_option("-m,--mode", trav_args.mode, "count, list or first-match")->capture_default_str();
  trav->add_option("--max-stored-cuts", trav_args.max_stored_cuts,
                   "Cap on cuts held by the traditional enumerator");
  trav->add_flag("--plain-successor", trav_args.plain_successor,
                 "Use the cubic successor search for uniflow");

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Cross-check all enumerators rank by rank");
  ver->add_option("trace", ver_args.trace, "Trace file")->required();
  ver->add_option("-r,--ranks", ver_args.ranks, "Check ranks up to the end of this spec")
      ->capture_default_str();
  ver->add_option("--inject-fault", ver_args.inject_fault)->group("");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time enumerators over traces and rank specs");
  bench->add_option("traces", bench_args.traces, "Trace files")->required();
  bench->add_option("-a,--algo", bench_args.algorithms, "Comma-separated algorithms")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("-r,--ranks", bench_args.ranks, "Comma-separated rank specs")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--reps", bench_args.repetitions, "Repetitions per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--csv", bench_args.csv, "Write the CSV report here");
  bench->add_option("--max-stored-cuts", bench_args.max_stored_cuts,
                    "Cap on cuts held by the traditional enumerator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_args, out);
    if (*part) return cmd_partition(part_args, out);
    if (*trav) return cmd_traverse(trav_args, out);
    if (*ver) return cmd_verify(ver_args, out);
    if (*bench) return cmd_bench(bench_args, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cutlattice::cli
