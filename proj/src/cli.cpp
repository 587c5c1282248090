#include "effdim/cli.hpp"

#include <concepts>
#include <iostream>
#include <sstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "effdim/code_file.hpp"
#include "effdim/codeword.hpp"
#include "effdim/covercode.hpp"
#include "effdim/entropy.hpp"
#include "effdim/figures.hpp"
#include "effdim/io.hpp"
#include "effdim/ledger.hpp"
#include "effdim/parallel.hpp"
#include "effdim/profile.hpp"
#include "effdim/source_spec.hpp"
#include "effdim/transforms.hpp"

namespace effdim::cli {

namespace {

using nlohmann::json;

std::string num(double x) { return fmt::format("{:.6g}", x); }

/// Parameter record embedded in every CSV/JSON artifact.
struct Meta {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  Meta& add(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  Meta& add(std::string key, double value) { return add(std::move(key), format_double(value)); }
  template <std::integral T>
  Meta& add(std::string key, T value) {
    return add(std::move(key), std::to_string(value));
  }

  std::string csv() const {
    std::string out = fmt::format("# tool=effdim {}\n# command={}\n", EFFDIM_VERSION, command);
    for (const auto& [k, v] : params) out += fmt::format("# {}={}\n", k, v);
    return out;
  }
  json to_json() const {
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    return {{"tool", "effdim"}, {"version", EFFDIM_VERSION}, {"command", command}, {"params", p}};
  }
};

struct Global {
  std::string format = "csv";
  std::string out;
  std::size_t cap = 0;  // 0: module defaults
  std::size_t threads = 0;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  Global global;

  void emit(const std::string& content, const std::string& path) const {
    if (path.empty()) {
      out << content;
      out.flush();
    } else {
      write_atomically(path, content);
    }
  }
  void emit(const std::string& content) const { emit(content, global.out); }
  void emit_table(const Meta& meta, const std::string& csv_body, const json& body) const {
    if (global.format == "json") {
      json doc = body;
      doc["meta"] = meta.to_json();
      emit(doc.dump(2) + "\n");
    } else {
      emit(meta.csv() + csv_body);
    }
  }
};

std::string encode_bits(const std::string& encoding, const BitBlock& bits) {
  return encoding == "binary" ? pack_bits(bits) : bits_to_text(bits);
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  double s = 0.0;
  double t = 0.0;
};

int cmd_bounds(const Ctx& ctx, const BoundsArgs& a) {
  const DistanceEnvelope env = bound_envelope(DimPair::checked(a.s, a.t));
  Meta meta{"bounds", {}};
  meta.add("s", a.s).add("t", a.t);
  ctx.emit_table(meta, fmt::format("s,t,min,max\n{},{},{},{}\n", num(a.s), num(a.t), num(env.min), num(env.max)),
                 {{"s", a.s}, {"t", a.t}, {"min", env.min}, {"max", env.max}});
  return kOk;
}

// ---- figure ---------------------------------------------------------------

struct FigureArgs {
  std::string which;
  double grid = 0.01;
};

int cmd_figure(const Ctx& ctx, const FigureArgs& a) {
  const FigureTable table = figure_data(a.which, a.grid);
  Meta meta{"figure", {}};
  meta.add("which", a.which).add("grid", a.grid);
  json rows = json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    json row = json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) row[table.columns[c]] = table.rows[i][c];
    row["transition"] = static_cast<bool>(table.transition[i]);
    rows.push_back(std::move(row));
  }
  ctx.emit_table(meta, figure_csv(table), {{"figure", table.id}, {"rows", rows}});
  return kOk;
}

// ---- code -----------------------------------------------------------------

struct CodeArgs {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t q = 0;
  std::optional<std::uint64_t> seed;
  bool verify = false;
  std::string file;
};

CanonicalOptions canonical_options(const Global& g) {
  CanonicalOptions options;
  options.cache_dir = default_cache_dir();
  if (g.cap != 0) {
    options.covering_cap = g.cap;
    options.distribution_cap = g.cap;
  }
  return options;
}

std::string distribution_csv(const DistributionReport& report) {
  std::string out = "q,max_count,bound,pass\n";
  for (const ShellRecord& s : report.shells) {
    out += fmt::format("{},{},{},{}\n", s.q, s.max_count, s.bound.str(), s.pass ? 1 : 0);
  }
  return out;
}

json distribution_json(const DistributionReport& report) {
  json shells = json::array();
  for (const ShellRecord& s : report.shells) {
    shells.push_back({{"q", s.q}, {"max_count", s.max_count}, {"bound", s.bound.str()}, {"pass", s.pass}});
  }
  return {{"pass", report.pass}, {"shells", shells}};
}

int report_verification(const Ctx& ctx, Meta meta, const CoveringCode& code, std::size_t cover_cap,
                        std::size_t dist_cap, const std::string& path) {
  const CoverageReport coverage = verify_covering_radius(code, cover_cap);
  const DistributionReport distribution = verify_well_distributed(code, dist_cap);
  meta.add("S", code.size());
  meta.add("covering_pass", coverage.pass ? "1" : "0");
  meta.add("uncovered", std::to_string(coverage.uncovered));
  meta.add("covering_radius", coverage.covering_radius);
  meta.add("distribution_pass", distribution.pass ? "1" : "0");
  json body = {{"covering", {{"pass", coverage.pass}, {"uncovered", coverage.uncovered},
                             {"covering_radius", coverage.covering_radius}}},
               {"distribution", distribution_json(distribution)}};
  const std::string content = ctx.global.format == "json"
                                  ? [&] {
                                      body["meta"] = meta.to_json();
                                      return body.dump(2) + "\n";
                                    }()
                                  : meta.csv() + distribution_csv(distribution);
  ctx.emit(content, path);
  return coverage.pass && distribution.pass ? kOk : kVerificationFailed;
}

int cmd_code_build(const Ctx& ctx, const CodeArgs& a, const std::string& report_path) {
  const CanonicalOptions options = canonical_options(ctx.global);
  CoveringCode code;
  if (a.seed) {
    code = build_random_code(a.n, a.r, *a.seed);
  } else {
    code = *canonical_code(a.n, a.r, options);
  }
  ctx.emit(format_code(code));
  if (!a.verify) return kOk;
  Meta meta{"code build", {}};
  meta.add("n", a.n).add("r", a.r).add("seed", code.seed);
  if (report_path.empty()) {
    // The code went to stdout or --out; the report goes to stderr.
    std::ostringstream sink;
    Ctx side{sink, ctx.err, ctx.global};
    const int status = report_verification(side, meta, code, options.covering_cap, options.distribution_cap, "");
    ctx.err << sink.str();
    return status;
  }
  return report_verification(ctx, meta, code, options.covering_cap, options.distribution_cap, report_path);
}

int cmd_code_verify(const Ctx& ctx, const CodeArgs& a) {
  const CoveringCode code = read_code_file(a.file);
  const CanonicalOptions options = canonical_options(ctx.global);
  Meta meta{"code verify", {}};
  meta.add("file", a.file).add("n", code.n).add("r", code.r).add("seed", code.seed);
  return report_verification(ctx, meta, code, options.covering_cap, options.distribution_cap, ctx.global.out);
}

int cmd_code_mincover(const Ctx& ctx, const CodeArgs& a) {
  const MinCover cover = min_cover_size_exact(a.n, a.r);
  const double space = std::ldexp(1.0, static_cast<int>(a.n));
  const double volume = ball_volume(a.n, a.r).value.convert_to<double>();
  const double lower = space / volume;
  const double upper = std::ceil(std::log(2.0) * static_cast<double>(a.n) * space / volume);
  Meta meta{"code mincover", {}};
  meta.add("n", a.n).add("r", a.r);
  json centers = json::array();
  for (Word w : cover.centers) centers.push_back(BitBlock::from_word(a.n, w).to_string());
  ctx.emit_table(meta, fmt::format("n,r,K,lower,upper\n{},{},{},{},{}\n", a.n, a.r, cover.size, num(lower), num(upper)),
                 {{"n", a.n}, {"r", a.r}, {"K", cover.size}, {"lower", lower}, {"upper", upper}, {"centers", centers}});
  return kOk;
}

int cmd_code_ballcover(const Ctx& ctx, const CodeArgs& a) {
  const std::uint64_t seed = a.seed.value_or(0);
  const BallCover cover = ball_cover(a.n, a.q, a.r, seed, ctx.global.cap == 0 ? kCoveringCap : ctx.global.cap);
  Meta meta{"code ballcover", {}};
  meta.add("n", a.n).add("q", a.q).add("r", a.r).add("seed", seed);
  json centers = json::array();
  for (Word w : cover.centers) centers.push_back(BitBlock::from_word(a.n, w).to_string());
  ctx.emit_table(meta,
                 fmt::format("n,q,r,seed,size,target,attempts,achieved_factor\n{},{},{},{},{},{},{},{}\n", a.n, a.q,
                             a.r, seed, cover.centers.size(), cover.target, cover.attempts,
                             num(cover.achieved_factor)),
                 {{"n", a.n},
                  {"q", a.q},
                  {"r", a.r},
                  {"seed", seed},
                  {"size", cover.centers.size()},
                  {"target", cover.target},
                  {"attempts", cover.attempts},
                  {"achieved_factor", cover.achieved_factor},
                  {"centers", centers}});
  return kOk;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string source;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::string r = "1/2";
  double s = 0.5;
  std::size_t nmax = kDefaultChunkCap;
  int value = 0;
  std::string base;
  std::size_t n = 0;
  std::string encoding = "text";
  std::string meta;
};

std::string descriptor_from(const GenArgs& a) {
  if (!a.source.empty()) return a.source;
  if (a.kind == "const") return fmt::format("const:value={}", a.value);
  if (a.kind == "uniform") return fmt::format("uniform:seed={}", a.seed);
  if (a.kind == "bernoulli") return fmt::format("bernoulli:p={},seed={}", format_double(a.p), a.seed);
  if (a.kind == "dyadic") return fmt::format("dyadic:r={}", a.r);
  if (a.kind == "thin") {
    return fmt::format("thin:y=[uniform:seed={}],b=[bernoulli:p={},seed={},role=thin]", a.seed,
                       format_double(std::min(1.0, 2.0 * entropy_inv(a.s))), a.seed);
  }
  if (a.kind == "codeword") {
    const std::string base = a.base.empty() ? fmt::format("uniform:seed={}", a.seed) : a.base;
    return fmt::format("codeword:s={},nmax={},base=[{}]", format_double(a.s), a.nmax, base);
  }
  throw std::invalid_argument(fmt::format("gen: unknown kind '{}' (or pass --source)", a.kind));
}

int cmd_gen(const Ctx& ctx, const GenArgs& a) {
  const SourcePtr src = parse_source(descriptor_from(a));
  ctx.emit(encode_bits(a.encoding, prefix(*src, a.n)));
  if (!a.meta.empty()) {
    Meta meta{"gen", {}};
    meta.add("source", src->descriptor()).add("n", a.n).add("encoding", a.encoding);
    write_atomically(a.meta, meta.to_json().dump(2) + "\n");
  }
  return kOk;
}

// ---- transform ------------------------------------------------------------

struct TransformArgs {
  std::string source;
  double s = 0.0;
  double t = 0.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t block = 12;
  std::size_t ell1 = 100;
  std::string mode = "relaxed";
  double growth = 4.0;
  std::string encoding = "text";
  std::string log;
  std::string densities;
  std::string schedule;
  std::string summary;
};

void write_transform_side(const Ctx& ctx, const Meta& meta, const TransformArgs& a, const ChangeLog& log,
                          const std::vector<std::size_t>& checkpoints, json summary) {
  if (!a.log.empty()) write_atomically(a.log, meta.csv() + change_positions_csv(log));
  if (!a.densities.empty()) write_atomically(a.densities, meta.csv() + change_density_csv(log, checkpoints));
  summary["meta"] = meta.to_json();
  summary["changes"] = log.positions.size();
  summary["distance"] = log.density_at(a.n);
  const std::string text = summary.dump(2) + "\n";
  if (!a.summary.empty()) {
    write_atomically(a.summary, text);
  } else if (!ctx.global.out.empty()) {
    ctx.out << text;
  }
}

int cmd_raise(const Ctx& ctx, const TransformArgs& a) {
  const SourcePtr x = parse_source(a.source);
  const SourcePtr y = raise_dimension(x, a.s, a.t, a.seed);
  const ChangeLog log = diff_log(*x, *y, a.n);
  ctx.emit(encode_bits(a.encoding, prefix(*y, a.n)));
  Meta meta{"transform raise", {}};
  meta.add("source", a.source).add("s", a.s).add("t", a.t).add("seed", a.seed).add("n", a.n);
  write_transform_side(ctx, meta, a, log, geometric_checkpoints(a.n, 20),
                       {{"flip_probability", entropy_inv(a.t - a.s)}});
  return kOk;
}

int cmd_lower_bernoulli(const Ctx& ctx, const TransformArgs& a) {
  const SourcePtr x = parse_source(a.source);
  const TransformResult result = lower_bernoulli(*x, a.s, a.t, a.block, a.n, a.seed);
  ctx.emit(encode_bits(a.encoding, prefix(*result.output, a.n)));
  std::size_t worst = 0;
  bool within = true;
  for (const auto& b : result.log.blocks) {
    worst = std::max(worst, b.changes);
    within = within && b.changes <= b.radius;
  }
  Meta meta{"transform lower-bernoulli", {}};
  meta.add("source", a.source).add("s", a.s).add("t", a.t).add("block", a.block).add("seed", a.seed).add("n", a.n);
  write_transform_side(ctx, meta, a, result.log, geometric_checkpoints(a.n, 20),
                       {{"max_block_changes", worst}, {"within_radius", within}});
  return within ? kOk : kVerificationFailed;
}

int cmd_lower_worst(const Ctx& ctx, const TransformArgs& a) {
  const SourcePtr x = parse_source(a.source);
  ScheduleMode mode = ScheduleMode::relaxed;
  if (a.mode == "strict") {
    mode = ScheduleMode::strict;
  } else if (a.mode != "relaxed") {
    throw std::invalid_argument("--mode must be relaxed or strict");
  }
  const LoweringSchedule schedule = lowering_schedule(a.s, a.t, a.ell1, mode, a.n, a.growth);
  const TransformResult result = worst_case_lower(*x, schedule, a.block, a.n);
  ctx.emit(encode_bits(a.encoding, prefix(*result.output, a.n)));
  Meta meta{"transform lower-worst", {}};
  meta.add("source", a.source).add("s", a.s).add("t", a.t).add("ell1", a.ell1).add("mode", a.mode);
  if (mode == ScheduleMode::relaxed) meta.add("growth", a.growth);
  meta.add("block", a.block).add("n", a.n);
  if (!a.schedule.empty()) {
    json doc = schedule_json(schedule);
    doc["meta"] = meta.to_json();
    write_atomically(a.schedule, doc.dump(2) + "\n");
  }
  write_transform_side(ctx, meta, a, result.log, schedule_checkpoints(schedule, a.block, a.n),
                       {{"stages", schedule.ell.size()}});
  return kOk;
}

// ---- profile / account ----------------------------------------------------

struct ProfileArgs {
  std::string a;
  std::string b;
  std::size_t n = 0;
  std::size_t checkpoints = 20;
};

int cmd_profile(const Ctx& ctx, const ProfileArgs& p) {
  const SourcePtr a = parse_source(p.a);
  const SourcePtr b = parse_source(p.b);
  const DistanceProfile profile = distance_profile(*a, *b, geometric_checkpoints(p.n, p.checkpoints));
  Meta meta{"profile", {}};
  meta.add("a", p.a).add("b", p.b).add("n", p.n).add("checkpoints", p.checkpoints);
  meta.add("tail_max", num(profile.tail_max));
  json rows = json::array();
  for (std::size_t i = 0; i < profile.checkpoints.size(); ++i) {
    rows.push_back({{"n", profile.checkpoints[i]},
                    {"differences", profile.differences[i]},
                    {"distance", profile.distance[i]},
                    {"density_a", profile.density_a[i]},
                    {"density_b", profile.density_b[i]}});
  }
  ctx.emit_table(meta, profile_csv(profile), {{"tail_max", profile.tail_max}, {"rows", rows}});
  return kOk;
}

struct AccountArgs {
  std::string source;
  std::size_t n = 0;
  std::string stream;
  bool check = false;
};

int cmd_account(const Ctx& ctx, const AccountArgs& a) {
  const SourcePtr src = parse_source(a.source);
  const EncodedPrefix encoded = encode_prefix(*src, a.n);
  bool round_trip = true;
  if (a.check) round_trip = decode_prefix(encoded.stream) == prefix(*src, a.n);
  if (!a.stream.empty()) write_atomically(a.stream, pack_bits(encoded.stream));
  Meta meta{"account", {}};
  meta.add("source", a.source).add("n", a.n);
  meta.add("total_bits", encoded.ledger.total_bits).add("ratio", num(encoded.ledger.ratio()));
  if (a.check) meta.add("round_trip", round_trip ? "1" : "0");
  std::string csv = "chunk,start,length,coded,header_bits,payload_bits,cumulative_bits\n";
  for (const LedgerEntry& e : encoded.ledger.entries) {
    csv += fmt::format("{},{},{},{},{},{},{}\n", e.chunk, e.start, e.length, e.coded ? 1 : 0, e.header_bits,
                       e.payload_bits, e.cumulative_bits);
  }
  ctx.emit_table(meta, csv, ledger_json(encoded.ledger));
  return round_trip ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"effdim: effective-dimension constructions on finite prefixes", "effdim"};
  app.set_version_flag("--version", EFFDIM_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Ctx ctx{out, err, {}};
  app.add_option("--format", ctx.global.format, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", ctx.global.out, "Write the primary artifact here (atomically) instead of stdout");
  app.add_option("--cap", ctx.global.cap, "Exhaustive-verification cap on n");
  app.add_option("--threads", ctx.global.threads, "Worker threads (default: EFFDIM_THREADS or 1)");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Min/max distance to the dimension-t sequences");
  bounds_cmd->add_option("--s", bounds.s)->required();
  bounds_cmd->add_option("--t", bounds.t)->required();

  FigureArgs figure;
  auto* figure_cmd = app.add_subcommand("figure", "Figure data tables");
  figure_cmd->add_option("which", figure.which, "fig1, fig2 or fig3")->required();
  figure_cmd->add_option("--grid", figure.grid, "Grid step in (0, 0.01]");

  CodeArgs code;
  std::string code_report;
  std::uint64_t code_seed = 0;
  auto* code_cmd = app.add_subcommand("code", "Covering codes");
  code_cmd->require_subcommand(1);
  code_cmd->fallthrough();
  auto* build_cmd = code_cmd->add_subcommand("build", "Build a code (canonical unless --seed is given)");
  build_cmd->add_option("--n", code.n)->required();
  build_cmd->add_option("--r", code.r)->required();
  auto* build_seed = build_cmd->add_option("--seed", code_seed);
  build_cmd->add_flag("--verify", code.verify, "Verify covering radius and well-distribution");
  build_cmd->add_option("--report", code_report, "Write the verification report here");
  auto* verify_cmd = code_cmd->add_subcommand("verify", "Verify a code file");
  verify_cmd->add_option("--file", code.file)->required();
  auto* mincover_cmd = code_cmd->add_subcommand("mincover", "Exact minimum covering code size (n <= 5)");
  mincover_cmd->add_option("--n", code.n)->required();
  mincover_cmd->add_option("--r", code.r)->required();
  auto* ballcover_cmd = code_cmd->add_subcommand("ballcover", "Cover B_q(0^n) by radius-r balls");
  ballcover_cmd->add_option("--n", code.n)->required();
  ballcover_cmd->add_option("--q", code.q)->required();
  ballcover_cmd->add_option("--r", code.r)->required();
  auto* ballcover_seed = ballcover_cmd->add_option("--seed", code_seed);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a bitstream prefix");
  gen_cmd->add_option("--kind", gen.kind, "const, uniform, bernoulli, dyadic, thin or codeword");
  gen_cmd->add_option("--source", gen.source, "Full source descriptor");
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--r", gen.r, "Rational m/k or decimal");
  gen_cmd->add_option("--s", gen.s);
  gen_cmd->add_option("--nmax", gen.nmax, "Chunk cap for codewords");
  gen_cmd->add_option("--value", gen.value);
  gen_cmd->add_option("--base", gen.base, "Base descriptor for codewords");
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--encoding", gen.encoding)->check(CLI::IsMember({"text", "binary"}));
  gen_cmd->add_option("--meta", gen.meta, "Write a JSON metadata record here");

  TransformArgs tr;
  auto* transform_cmd = app.add_subcommand("transform", "Dimension-changing transformations");
  transform_cmd->require_subcommand(1);
  transform_cmd->fallthrough();
  auto add_common = [&tr](CLI::App* sub) {
    sub->add_option("--source", tr.source, "Input source descriptor")->required();
    sub->add_option("--s", tr.s)->required();
    sub->add_option("--t", tr.t)->required();
    sub->add_option("--n", tr.n)->required();
    sub->add_option("--encoding", tr.encoding)->check(CLI::IsMember({"text", "binary"}));
    sub->add_option("--log", tr.log, "Change positions CSV");
    sub->add_option("--densities", tr.densities, "Per-checkpoint change density CSV");
    sub->add_option("--summary", tr.summary, "Summary JSON");
  };
  auto* raise_cmd = transform_cmd->add_subcommand("raise", "XOR with a Bernoulli stream");
  add_common(raise_cmd);
  raise_cmd->add_option("--seed", tr.seed);
  auto* lowb_cmd = transform_cmd->add_subcommand("lower-bernoulli", "Block-wise ball-cover lowering");
  add_common(lowb_cmd);
  lowb_cmd->add_option("--seed", tr.seed);
  lowb_cmd->add_option("--block", tr.block);
  auto* loww_cmd = transform_cmd->add_subcommand("lower-worst", "Scheduled worst-case lowering");
  add_common(loww_cmd);
  loww_cmd->add_option("--ell1", tr.ell1);
  loww_cmd->add_option("--mode", tr.mode)->check(CLI::IsMember({"relaxed", "strict"}));
  loww_cmd->add_option("--growth", tr.growth);
  loww_cmd->add_option("--block", tr.block);
  loww_cmd->add_option("--schedule", tr.schedule, "Schedule JSON");

  ProfileArgs prof;
  auto* profile_cmd = app.add_subcommand("profile", "Distance/density profile of two sources");
  profile_cmd->add_option("--a", prof.a)->required();
  profile_cmd->add_option("--b", prof.b)->required();
  profile_cmd->add_option("--n", prof.n)->required();
  profile_cmd->add_option("--checkpoints", prof.checkpoints);

  AccountArgs acc;
  auto* account_cmd = app.add_subcommand("account", "Description-length ledger of a prefix");
  account_cmd->add_option("--source", acc.source)->required();
  account_cmd->add_option("--n", acc.n)->required();
  account_cmd->add_option("--stream", acc.stream, "Write the encoded bitstream (packed) here");
  account_cmd->add_flag("--check", acc.check, "Decode the stream and compare with the prefix");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForVersion&) {
    out << EFFDIM_VERSION << "\n";
    return kOk;
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  if (ctx.global.threads != 0) set_thread_count(ctx.global.threads);
  try {
    if (bounds_cmd->parsed()) return cmd_bounds(ctx, bounds);
    if (figure_cmd->parsed()) return cmd_figure(ctx, figure);
    if (build_cmd->parsed()) {
      if (build_seed->count() > 0) code.seed = code_seed;
      return cmd_code_build(ctx, code, code_report);
    }
    if (verify_cmd->parsed()) return cmd_code_verify(ctx, code);
    if (mincover_cmd->parsed()) return cmd_code_mincover(ctx, code);
    if (ballcover_cmd->parsed()) {
      if (ballcover_seed->count() > 0) code.seed = code_seed;
      return cmd_code_ballcover(ctx, code);
    }
    if (gen_cmd->parsed()) return cmd_gen(ctx, gen);
    if (raise_cmd->parsed()) return cmd_raise(ctx, tr);
    if (lowb_cmd->parsed()) return cmd_lower_bernoulli(ctx, tr);
    if (loww_cmd->parsed()) return cmd_lower_worst(ctx, tr);
    if (profile_cmd->parsed()) return cmd_profile(ctx, prof);
    if (account_cmd->parsed()) return cmd_account(ctx, acc);
  } catch (const std::invalid_argument& e) {
    err << "effdim: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "effdim: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "effdim: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "effdim: " << e.what() << "\n";
    return kVerificationFailed;
  }
  err << app.help();
  return kUsage;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace effdim::cli
