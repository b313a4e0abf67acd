#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ornament/constructions.hpp"
#include "ornament/degree.hpp"
#include "ornament/errors.hpp"
#include "ornament/interchange.hpp"
#include "ornament/perturb.hpp"
#include "ornament/sweep.hpp"

namespace ornament::cli {

using nlohmann::json;

namespace {

// Thrown for well-formed documents that violate a command's precondition.
struct InvalidInput : std::runtime_error {
  json report;
  InvalidInput(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::array<Vector, 3> parse_targets(const std::string& text, std::size_t m) {
  const auto groups = split(text, ';');
  if (groups.size() != 3) throw ParseError("--targets: expected three ';'-separated points");
  std::array<Vector, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& coord : split(groups[i], ',')) out[i].push_back(parse_rational(coord));
    if (out[i].size() != m)
      throw DimensionError("--targets: point " + std::to_string(i + 1) + " needs " + std::to_string(m) + " coordinates");
  }
  return out;
}

// Manifold reports for every component, plus the ornament report when all
// components pass.
json validation_report(const Ornament& o) {
  json comps = json::array();
  bool manifolds_ok = true;
  for (const auto& c : o.components) {
    const ManifoldReport r = validate_manifold(c.domain);
    manifolds_ok = manifolds_ok && r.valid();
    json entry = to_json(r);
    entry["name"] = c.name;
    comps.push_back(std::move(entry));
  }
  json doc{{"components", comps}};
  if (!manifolds_ok) {
    doc["ornament"] = {{"status", "skipped"}};
    doc["status"] = "invalid";
    return doc;
  }
  o.check_shapes();
  const OrnamentReport r = validate_ornament(o);
  doc["ornament"] = to_json(r);
  doc["status"] = r.valid() ? "valid" : "invalid";
  return doc;
}

void require_valid(const Ornament& o, const std::string& what) {
  json report = validation_report(o);
  if (report["status"] != "valid") throw InvalidInput(what + " is not a valid ornament", std::move(report));
}

Ornament load_ornament(const std::string& path) { return ornament_from_json(read_document(path)); }

void emit(std::ostream& out, const std::string& path, const json& doc) {
  if (path.empty()) {
    out << dump(doc);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError(path + ": cannot write file");
  file << dump(doc);
}

json degree_report(const DegreeResult& r) {
  json pre = json::array();
  for (const auto& p : r.preimages) pre.push_back(to_json(p));
  return {{"mu", r.mu}, {"direction", vector_to_json(r.direction.v)}, {"preimages", pre}};
}

json points_report(const std::vector<SignedTriplePoint>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(to_json(p));
  return out;
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  const Ornament o = load_ornament(file);
  const json report = validation_report(o);
  out << dump(report);
  err << file << ": " << report["status"].get<std::string>() << "\n";
  return kOk;
}

int cmd_mu(const std::string& file, const std::string& method, std::uint64_t seed, std::ostream& out,
           std::ostream& err) {
  const Ornament o = load_ornament(file);
  require_valid(o, file);
  require_degree_dimensions(o);
  json report{{"method", method}, {"seed", seed}};
  std::optional<long> by_degree, by_sweep;
  if (method != "sweep") {
    const DegreeResult r = mu_via_degree_seeded(o, seed);
    by_degree = r.mu;
    report["degree"] = degree_report(r);
    err << "degree: mu = " << r.mu << " (" << r.preimages.size() << " preimages)\n";
  }
  if (method != "degree") {
    const SweepOutcome s = sweep_to_trivial(o, seed);
    by_sweep = s.sum;
    json targets = json::array();
    for (std::size_t i = 0; i < 3; ++i) targets.push_back(vector_to_json(s.track.end().components[i].images.front()));
    report["sweep"] = {{"mu", s.sum}, {"targets", targets}, {"repairs", s.repairs}, {"points", points_report(s.points)}};
    err << "sweep: mu = " << s.sum << " (" << s.points.size() << " triple points, " << s.repairs << " repairs)\n";
  }
  int status = kOk;
  if (by_degree && by_sweep) {
    const bool agree = *by_degree == *by_sweep;
    report["agree"] = agree;
    err << (agree ? "methods agree\n" : "methods DISAGREE\n");
    if (!agree) status = kContract;
  }
  report["mu"] = by_degree ? *by_degree : *by_sweep;
  out << dump(report);
  return status;
}

struct GenOptions {
  std::string kind;
  int k = 1;
  int r = 0;
  std::uint64_t seed = 0;
  std::string eps;
  std::string spread = "1";
  std::string targets;
  std::string out;
};

int cmd_gen(const GenOptions& g, std::ostream& out, std::ostream& err) {
  if (g.k < 1 || g.k > 3) throw DimensionError("--k must be 1, 2 or 3");
  if (g.r < 0 || g.r > 2) throw DimensionError("--r must be 0, 1 or 2");
  const std::size_t m = 3 * static_cast<std::size_t>(g.k) - 1;
  Ornament o;
  if (g.kind == "borromean") {
    o = make_borromean(g.k, g.r, g.seed);
  } else if (g.kind == "trivial") {
    std::array<Vector, 3> targets;
    if (g.targets.empty()) {
      for (std::size_t i = 0; i < 3; ++i) {
        targets[i] = zeros(m);
        targets[i][0] = static_cast<long>(i);
      }
    } else {
      targets = parse_targets(g.targets, m);
    }
    o = make_trivial(g.k, targets);
  } else {
    const Scalar spread = parse_rational(g.spread);
    if (sgn(spread) <= 0) throw DimensionError("--spread must be positive");
    o = make_random_ornament(g.k, g.r, g.seed, spread);
  }
  if (!g.eps.empty()) {
    const Scalar eps = parse_rational(g.eps);
    if (sgn(eps) <= 0) throw DimensionError("--eps must be positive");
    o = perturb_ornament(o, eps, g.seed);
  }
  if (!validate_ornament(o).valid()) throw ContractViolation("generated ornament failed validation");
  emit(out, g.out, to_json(o));
  if (!g.out.empty()) out << dump(json{{"status", "valid"}, {"out", g.out}});
  err << g.kind << " k=" << g.k << ": valid\n";
  return kOk;
}

int cmd_sweep(const std::string& file, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const HomotopyTrack track = track_from_json(read_document(file));
  try {
    track.check_well_formed();
  } catch (const ContractViolation& e) {
    throw InvalidInput(e.what(), json{{"status", "invalid"}, {"message", e.what()}});
  }
  require_valid(track.start(), "start of " + file);
  require_valid(track.end(), "end of " + file);
  require_degree_dimensions(track.start());

  const SweepOutcome s = sweep_generic(track, seed);
  const long mu_start = mu_via_degree_seeded(track.start(), seed).mu;
  const long mu_end = mu_via_degree_seeded(track.end(), seed).mu;
  const bool identity = s.sum == mu_start - mu_end;
  const Pairing pairing = pair_opposite_signs(s.points);
  json pairs = json::array();
  for (const auto& [pos, neg] : pairing.pairs) pairs.push_back({pos, neg});

  out << dump(json{{"points", points_report(s.points)},
                   {"sum", s.sum},
                   {"repairs", s.repairs},
                   {"mu_start", mu_start},
                   {"mu_end", mu_end},
                   {"identity", identity},
                   {"pairs", pairs},
                   {"unpaired", pairing.unpaired}});
  err << "sum = " << s.sum << ", mu(start) - mu(end) = " << mu_start - mu_end << ", " << pairing.pairs.size()
      << " pairs, " << pairing.unpaired.size() << " unpaired\n";
  return identity ? kOk : kContract;
}

int cmd_homotopy(const std::string& start_file, const std::string& end_file, const std::string& targets,
                 std::uint64_t seed, bool reverse, const std::string& out_file, std::ostream& out, std::ostream& err) {
  const Ornament start = load_ornament(start_file);
  require_valid(start, start_file);
  require_degree_dimensions(start);
  HomotopyTrack track;
  if (!end_file.empty()) {
    const Ornament end = load_ornament(end_file);
    require_valid(end, end_file);
    track = sweep_generic(straight_line_track(start, end), seed).track;
  } else {
    const auto t = targets.empty() ? default_trivial_targets(start, seed) : parse_targets(targets, start.ambient_dim());
    track = straight_line_homotopy_to_trivial(start, t, 0, seed);
  }
  if (reverse) track = reverse_track(track);
  emit(out, out_file, to_json(track));
  if (!out_file.empty()) out << dump(json{{"status", "valid"}, {"out", out_file}});
  err << "track with " << track.keyframes.size() << " keyframes\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact mu-invariant of three-component ornaments"};
  app.name(args.empty() ? "ornament" : args.front());
  app.require_subcommand(1);

  std::string file, method = "both";
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check the manifold and ornament conditions");
  validate->add_option("file", file, "Ornament document")->required();

  auto* mu = app.add_subcommand("mu", "Compute mu by degree, sweep, or both");
  mu->add_option("file", file, "Ornament document")->required();
  mu->add_option("--method", method)->check(CLI::IsMember({"degree", "sweep", "both"}));
  mu->add_option("--seed", seed);

  GenOptions g;
  auto* gen = app.add_subcommand("gen", "Generate an ornament document");
  gen->add_option("kind", g.kind)->required()->check(CLI::IsMember({"borromean", "trivial", "random"}));
  gen->add_option("--k", g.k);
  gen->add_option("--r", g.r);
  gen->add_option("--seed", g.seed);
  gen->add_option("--eps", g.eps, "Perturb the result by less than eps");
  gen->add_option("--spread", g.spread, "Half-width of the box for random images");
  gen->add_option("--targets", g.targets, "Trivial targets as \"p/q,...;...;...\"");
  gen->add_option("--out", g.out);

  auto* sweep = app.add_subcommand("sweep", "Signed triple points of a homotopy document");
  sweep->add_option("file", file, "Homotopy document")->required();
  sweep->add_option("--seed", seed);

  std::string end_file, targets, out_file;
  bool reverse = false;
  auto* homotopy = app.add_subcommand("homotopy", "Straight-line homotopy document between ornaments");
  homotopy->add_option("start", file, "Ornament document")->required();
  homotopy->add_option("end", end_file, "Ornament document (default: trivial ornament)");
  homotopy->add_option("--targets", targets, "Trivial targets as \"p/q,...;...;...\"");
  homotopy->add_option("--seed", seed);
  homotopy->add_flag("--reverse", reverse, "Run the track backwards");
  homotopy->add_option("--out", out_file);

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*mu) return cmd_mu(file, method, seed, out, err);
    if (*gen) return cmd_gen(g, out, err);
    if (*sweep) return cmd_sweep(file, seed, out, err);
    return cmd_homotopy(file, end_file, targets, seed, reverse, out_file, out, err);
  } catch (const InvalidInput& e) {
    out << dump(e.report);
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kContract;
  }
}

}  // namespace ornament::cli
