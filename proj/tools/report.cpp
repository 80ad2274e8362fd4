#include "report.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wfseq/parallel.hpp"

namespace wfseq::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

std::string slug(std::string s) {
  for (auto& ch : s)
    if (ch == ' ' || ch == '.') ch = '-';
  return s;
}

std::string rtag(int r) { return "-r" + std::to_string(r); }

template <class T>
std::string hash_list(const std::vector<T>& v) {
  std::ostringstream os;
  for (const auto& x : v) os << x << ',';
  return fnv1a(os.str());
}

// Degrees requested, or the defaults.
std::vector<int> degrees_or(const RunConfig& c, std::vector<int> dflt) { return c.degrees.empty() ? dflt : c.degrees; }

int samples_or(const RunConfig& c, int dflt) { return c.samples > 0 ? c.samples : dflt; }

bool wants_bc(const RunConfig& c, Bc b) { return !c.bc || *c.bc == b; }

const char* bc_name(Bc b) { return b == Bc::Zero ? "zero" : "none"; }

std::vector<std::string> diagrams() { return {"SLVV", "SSLV", "SSSL"}; }

// Record for a throwing check: the error is the witness.
Record failed(const std::string& id, const std::string& anchor, json params, const Error& e) {
  Record rec{id, anchor, std::move(params), false, fnv1a(e.what())};
  rec.params["error"] = e.what();
  return rec;
}

}  // namespace

std::vector<int> parse_degrees(const std::string& s) {
  auto number = [&](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      config_error("bad degree '" + t + "' in '" + s + "'");
    if (t.size() > 2) config_error("degree out of range: " + t);
    return std::stoi(t);
  };
  std::vector<int> out;
  if (auto p = s.find(".."); p != std::string::npos) {
    int a = number(s.substr(0, p)), b = number(s.substr(p + 2));
    if (a > b) config_error("empty degree range " + s);
    for (int r = a; r <= b; ++r) out.push_back(r);
    return out;
  }
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');) out.push_back(number(t));
  if (out.empty()) config_error("no degree given");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands{"dims",   "exactness", "potentials", "unisolvency", "commute",
                                                 "frames", "jump-lemmas", "global",   "identity",    "report"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) config_error("unknown command " + c.command);
  for (int r : c.degrees)
    if (r < 0 || r > 8) config_error("degree " + std::to_string(r) + " outside 0..8");
  if (c.samples < 0) config_error("samples must be positive");
  if (!c.seq.empty()) {
    static const std::vector<std::string> names{"VVVV", "SLVV", "SSLV", "SSSL", "LVV", "SLV", "SSL"};
    if (std::find(names.begin(), names.end(), upper(c.seq)) == names.end()) config_error("unknown sequence " + c.seq);
  }
  if (!c.diagram.empty()) {
    auto d = diagrams();
    if (std::find(d.begin(), d.end(), upper(c.diagram)) == d.end()) config_error("unknown diagram " + c.diagram);
  }
  if (!c.lemma.empty()) {
    try {
      parse_lemma(upper(c.lemma));
    } catch (const Error&) {
      config_error("unknown lemma " + c.lemma);
    }
  }
  if (c.format != "json" && c.format != "md") config_error("format must be json or md");
  if (c.tol <= 0) config_error("tol must be positive");
}

// ------------------------------------------------------------------ dimensions

std::vector<Task> dims_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (DimTable t : {DimTable::VL, DimTable::CT, DimTable::Smooth, DimTable::Rings}) {
    int lo, hi;
    dim_table_range(t, lo, hi);
    std::vector<SpaceSpec> specs;
    for (const auto& s : dim_table_specs(t, lo, hi)) {
      bool in = c.degrees.empty() || std::find(c.degrees.begin(), c.degrees.end(), s.degree) != c.degrees.end();
      if (in && wants_bc(c, s.bc)) specs.push_back(s);
    }
    if (specs.empty()) continue;
    tasks.push_back([t, specs] {
      std::vector<Record> recs;
      for (const auto& row : dim_table(specs)) {
        Record rec;
        rec.check_id = std::string("dims.") + dim_table_name(t) + "." + row.spec.name();
        rec.anchor = "dim " + row.spec.name() + " equals its closed form";
        rec.params = {{"family", family_name(row.spec.family)}, {"r", row.spec.degree}, {"bc", bc_name(row.spec.bc)},
                      {"computed", row.computed}};
        rec.params["formula"] = row.formula ? json(*row.formula) : json(nullptr);
        rec.pass = row.match();
        rec.witness_digest = hash_list(std::vector<std::size_t>{row.computed});
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  }
  return tasks;
}

std::vector<Task> spot_tasks(const RunConfig&) {
  struct Spot {
    SpaceSpec spec;
    long expected;
  };
  std::vector<Spot> spots{{{Family::CalV2, 1, Bc::Zero}, 38}, {{Family::CalV3, 0, Bc::None}, 4}, {{Family::CalV3, 0, Bc::Zero}, 3}};
  std::vector<Task> tasks;
  for (const auto& s : spots)
    tasks.push_back([s] {
      auto sp = build_space(s.spec, Domain::of(reference_split()));
      Record rec;
      rec.check_id = "dims.spot." + s.spec.name();
      rec.anchor = "dim " + s.spec.name() + " = " + std::to_string(s.expected);
      rec.params = {{"computed", sp->dim()}, {"expected", s.expected}};
      rec.pass = static_cast<long>(sp->dim()) == s.expected;
      rec.witness_digest = hash_list(std::vector<std::size_t>{sp->dim()});
      return std::vector<Record>{rec};
    });
  return tasks;
}

std::vector<Task> rank_nullity_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (int r : degrees_or(c, {3, 4, 5})) {
    if (r < 3) continue;
    tasks.push_back([r] {
      std::vector<Record> recs;
      for (const auto& a : rank_nullity_audit(r)) {
        Record rec;
        rec.check_id = "ranknullity." + a.seq.label();
        rec.anchor = "alternating sum of dims of " + a.seq.name + " equals " + std::to_string(a.expected);
        rec.params = {{"dims", a.dims}, {"sum", a.sum}, {"expected", a.expected}, {"r", r}, {"bc", bc_name(a.seq.bc)}};
        rec.pass = a.ok();
        rec.witness_digest = hash_list(a.dims);
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  }
  return tasks;
}

// ------------------------------------------------------------------ exactness

std::vector<Task> exactness_tasks(const RunConfig& c) {
  std::vector<SequenceSpec> seqs;
  for (int r : degrees_or(c, {3, 4}))
    for (const auto& s : all_sequences(3, r)) seqs.push_back(s);
  for (int r : degrees_or(c, {1, 2, 3, 4}))
    for (const auto& s : all_sequences(2, r)) seqs.push_back(s);
  std::vector<Task> tasks;
  for (const auto& s : seqs) {
    if (!c.seq.empty() && upper(c.seq) != s.name) continue;
    if (!wants_bc(c, s.bc)) continue;
    tasks.push_back([s] {
      Record rec;
      rec.check_id = "exactness." + s.label();
      rec.anchor = "image equals kernel at every arrow of " + s.name + (s.bc == Bc::Zero ? " with zero traces" : "");
      json params = {{"r", s.r}, {"dim", s.dim}, {"bc", bc_name(s.bc)}};
      try {
        auto e = check_exactness(s);
        std::vector<std::size_t> ranks, kernels;
        for (const auto& a : e.arrows) ranks.push_back(a.rank), kernels.push_back(a.kernel_dim);
        params["dims"] = e.dims;
        params["ranks"] = ranks;
        params["kernels"] = kernels;
        params["head_ok"] = e.head_ok;
        params["tail_ok"] = e.tail_ok;
        rec.params = params;
        rec.pass = e.exact;
        auto all = e.dims;
        all.insert(all.end(), ranks.begin(), ranks.end());
        rec.witness_digest = hash_list(all);
      } catch (const Error& err) {
        rec = failed(rec.check_id, rec.anchor, params, err);
      }
      return std::vector<Record>{rec};
    });
  }
  return tasks;
}

// ------------------------------------------------------------------ potentials

std::vector<Task> potential_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  int trials = samples_or(c, 10);
  std::uint64_t seed = c.seed;
  for (const auto& cl : potential_clauses()) {
    std::vector<int> rs = c.degrees;
    if (!wants_bc(c, cl.data.bc)) continue;
    tasks.push_back([cl, rs, trials, seed] {
      Domain d = Domain::of(reference_split());
      std::vector<Record> recs;
      auto degrees = rs.empty() ? std::vector<int>{smallest_nontrivial_degree(cl, d)} : rs;
      for (int r : degrees) {
        Record rec;
        rec.check_id = "potential." + cl.id + rtag(r);
        rec.anchor = cl.anchor;
        json params = {{"r", r}, {"trials", trials}};
        try {
          auto rep = certify_potential(cl, d, r, trials, seed);
          params["hypothesis_dim"] = rep.hypothesis_dim;
          params["solved"] = rep.solved;
          params["hypothesis_rejected"] = rep.hypothesis_rejected;
          rec.params = params;
          rec.pass = rep.ok();
          rec.witness_digest = rep.digest;
        } catch (const Error& err) {
          rec = failed(rec.check_id, rec.anchor, params, err);
        }
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  }
  return tasks;
}

// ------------------------------------------------------------------ DOFs and projections

std::vector<Task> unisolvency_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (DofLemma l : all_lemmas()) {
    if (!c.lemma.empty() && parse_lemma(upper(c.lemma)) != l) continue;
    int m = lemma_min_degree(l);
    for (int r : degrees_or(c, {m, m + 1}))
      tasks.push_back([l, r] {
        auto u = check_unisolvency(l, r, reference_split());
        Record rec;
        rec.check_id = std::string("unisolvency.") + lemma_name(l) + rtag(r);
        rec.anchor = std::string("DOFs of ") + lemma_name(l) + " are unisolvent on " + lemma_target(l, r).name();
        json classes = json::object();
        for (const auto& [tag, n] : u.class_counts) classes[tag] = n;
        rec.params = {{"r", r},    {"count", u.count}, {"dim", u.dim}, {"rank", u.rank}, {"printed_total", u.printed_total},
                      {"classes", classes}};
        rec.pass = u.invertible() && u.counts_match();
        rec.witness_digest = hash_list(std::vector<std::size_t>{u.count, u.dim, u.rank});
        return std::vector<Record>{rec};
      });
  }
  return tasks;
}

std::vector<Task> commute_tasks(const RunConfig& c) {
  std::vector<std::pair<std::string, int>> runs;
  if (c.degrees.empty()) {
    runs = {{"SLVV", 3}, {"SSLV", 3}, {"SLVV", 4}, {"SSLV", 4}, {"SSSL", 4}};
  } else {
    for (const auto& d : diagrams())
      for (int r : c.degrees) runs.emplace_back(d, r);
  }
  int n = samples_or(c, 5);
  std::uint64_t seed = c.seed;
  std::vector<Task> tasks;
  for (const auto& [d, r] : runs) {
    if (!c.diagram.empty() && upper(c.diagram) != d) continue;
    tasks.push_back([d, r, n, seed] {
      Record rec;
      rec.check_id = "commute." + d + rtag(r);
      rec.anchor = "projections of " + d + " commute with grad, curl and div";
      json params = {{"r", r}, {"inputs_per_degree", n}};
      try {
        auto rep = check_commute(d, r, n, seed, reference_split());
        json per = json::object();
        for (std::size_t i = 0; i < rep.identities.size(); ++i) per[rep.identities[i]] = rep.passed[i];
        params["samples"] = rep.samples;
        params["exact_zero_residuals"] = per;
        rec.params = params;
        rec.pass = rep.ok();
        rec.witness_digest = rep.digest;
      } catch (const Error& err) {
        rec = failed(rec.check_id, rec.anchor, params, err);
      }
      return std::vector<Record>{rec};
    });
  }
  return tasks;
}

std::vector<Task> frame_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (int r : degrees_or(c, {3}))
    tasks.push_back([r] {
      auto rep = check_frame_invariance(r);
      std::vector<Record> recs;
      for (const auto& [l, eq] : rep.equal) {
        int rr = std::max(r, lemma_min_degree(l));
        Record rec;
        rec.check_id = std::string("frames.") + lemma_name(l) + rtag(r);
        rec.anchor = std::string("projection onto ") + lemma_name(l) + " does not depend on the face frames";
        rec.params = {{"r", rr}, {"equal", eq}};
        rec.pass = eq;
        rec.witness_digest = fnv1a(eq ? "equal" : "differ");
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  return tasks;
}

// ------------------------------------------------------------------ lemmas on faces and pairs

std::vector<Task> jump_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  int n = samples_or(c, 25);
  std::uint64_t seed = c.seed;
  for (int r : degrees_or(c, {2, 3}))
    tasks.push_back([r, n, seed] {
      std::vector<Record> recs;
      for (const auto& j : check_jump_lemmas(r, n, seed)) {
        Record rec;
        rec.check_id = "jump." + slug(j.name) + rtag(r);
        rec.anchor = j.name + " moments force continuity, and no moment can be dropped";
        rec.params = {{"r", r}, {"samples", j.samples}, {"held", j.conclusion_held}, {"sharp", j.violation_caught}};
        rec.pass = j.ok();
        rec.witness_digest = hash_list(std::vector<int>{j.samples, j.conclusion_held, j.violation_caught});
        recs.push_back(std::move(rec));
      }
      return recs;
    });
  return tasks;
}

namespace {

Record property_record(const std::string& prefix, const PropertyReport& p) {
  Record rec;
  rec.check_id = prefix + slug(p.name) + rtag(p.r);
  rec.anchor = p.name;
  rec.params = {{"r", p.r}, {"samples", p.samples}, {"held", p.held}, {"exact", p.exact}, {"witness", p.witness}};
  rec.pass = p.ok();
  rec.witness_digest = p.digest;
  return rec;
}

}  // namespace

std::vector<Task> identity_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  int n = samples_or(c, 25);
  std::uint64_t seed = c.seed;
  for (int r : degrees_or(c, {2, 3})) {
    tasks.push_back([r, n, seed] { return std::vector<Record>{property_record("identity.", check_appendix_identity(r, n, seed))}; });
    tasks.push_back([r, n, seed] { return std::vector<Record>{property_record("identity.", check_tangential_trace_div(r, n, seed))}; });
    tasks.push_back([r, n, seed] { return std::vector<Record>{property_record("identity.", check_surface_div_continuity(r, n, seed))}; });
  }
  return tasks;
}

std::vector<Task> global_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  int n = samples_or(c, 30);
  std::uint64_t seed = c.seed;
  for (DofLemma l : all_lemmas()) {
    if (!c.lemma.empty() && parse_lemma(upper(c.lemma)) != l) continue;
    for (int r : degrees_or(c, {std::max(3, lemma_min_degree(l))}))
      tasks.push_back([l, r, n, seed] {
        Record rec;
        rec.check_id = std::string("global.conformity.") + lemma_name(l) + rtag(r);
        rec.anchor = std::string("shared-face DOFs of ") + lemma_name(l) + " induce the global space";
        json params = {{"r", r}};
        try {
          auto rep = check_global_conformity(l, r, n, seed);
          params["face_dofs"] = rep.face_dofs;
          params["glued_dim"] = rep.glued_dim;
          params["smooth_dim"] = rep.smooth_dim;
          params["contained"] = rep.contained;
          params["samples"] = rep.samples;
          params["sample_ok"] = rep.sample_ok;
          rec.params = params;
          rec.pass = rep.ok();
          rec.witness_digest = rep.digest;
        } catch (const Error& err) {
          rec = failed(rec.check_id, rec.anchor, params, err);
        }
        return std::vector<Record>{rec};
      });
  }
  if (!c.lemma.empty()) return tasks;
  for (int r : degrees_or(c, {3})) {
    tasks.push_back([r, n, seed] {
      std::vector<Record> recs;
      for (const auto& p : check_theta_properties(r, n, seed)) recs.push_back(property_record("global.theta.", p));
      return recs;
    });
    for (int k : {0, 1})
      tasks.push_back([r, k, n, seed] { return std::vector<Record>{property_record("global.extension.", check_extension(r, k, n, seed))}; });
  }
  std::vector<std::pair<std::string, int>> complexes{{"SLVV", 3}, {"SSLV", 3}, {"SSSL", 4}};
  if (!c.degrees.empty()) {
    complexes.clear();
    for (const auto& d : diagrams())
      for (int r : c.degrees) complexes.emplace_back(d, r);
  }
  for (const auto& [d, r] : complexes) {
    if (!c.diagram.empty() && upper(c.diagram) != d) continue;
    tasks.push_back([d, r] {
      Record rec;
      rec.check_id = "global.complex." + d + rtag(r);
      rec.anchor = "glued " + d + " spaces form a complex";
      json params = {{"r", r}};
      try {
        auto g = check_glued_complex(d, r);
        params["dims"] = g.dims;
        params["maps_into"] = g.maps_into;
        params["composes_zero"] = g.composes_zero;
        rec.params = params;
        rec.pass = g.ok();
        rec.witness_digest = hash_list(g.dims);
      } catch (const Error& err) {
        rec = failed(rec.check_id, rec.anchor, params, err);
      }
      return std::vector<Record>{rec};
    });
  }
  return tasks;
}

// ------------------------------------------------------------------ driver

std::vector<Record> run_tasks(const std::vector<Task>& tasks) {
  std::vector<std::vector<Record>> slots(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { slots[i] = tasks[i](); });
  std::vector<Record> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(), [](const Record& a, const Record& b) { return a.check_id < b.check_id; });
  return out;
}

namespace {

template <class... F>
std::function<std::vector<Task>(const RunConfig&)> join(F... f) {
  return [=](const RunConfig& c) {
    std::vector<Task> all;
    for (auto& part : {f(c)...}) all.insert(all.end(), part.begin(), part.end());
    return all;
  };
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "dimension sweep against the closed forms", join(dims_tasks)},
      {2, "spot dimensions of the calligraphic V spaces", join(spot_tasks)},
      {3, "exactness of all 3D and 2D sequences", join(exactness_tasks)},
      {4, "rank-nullity alternating sums", join(rank_nullity_tasks)},
      {5, "surjectivity witnesses", join(potential_tasks)},
      {6, "unisolvency of the local DOF sets", join(unisolvency_tasks)},
      {7, "commuting projections", join(commute_tasks)},
      {8, "jump identity and face trace lemmas", join(identity_tasks, jump_tasks)},
      {9, "two-tet conformity and theta properties", join(global_tasks)},
      {10, "frame invariance of the projections", join(frame_tasks)},
      {11, "byte-identical report for a fixed seed", nullptr},
  };
}

std::vector<Task> command_tasks(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "dims") return join(dims_tasks, spot_tasks, rank_nullity_tasks)(c);
  if (cmd == "exactness") return exactness_tasks(c);
  if (cmd == "potentials") return potential_tasks(c);
  if (cmd == "unisolvency") return unisolvency_tasks(c);
  if (cmd == "commute") return commute_tasks(c);
  if (cmd == "frames") return frame_tasks(c);
  if (cmd == "jump-lemmas") return jump_tasks(c);
  if (cmd == "identity") return identity_tasks(c);
  if (cmd == "global") return global_tasks(c);
  if (cmd == "report") {
    std::vector<Task> all;
    for (const auto& cr : acceptance_criteria())
      if (cr.tasks) {
        auto t = cr.tasks(c);
        all.insert(all.end(), t.begin(), t.end());
      }
    return all;
  }
  config_error("unknown command " + cmd);
}

namespace {

json header(const std::vector<Record>& recs, const RunConfig& c) {
  json h = {{"command", c.command}, {"seed", c.seed}, {"mode", c.float_mode ? "float" : "rational"}};
  if (c.float_mode) h["tol"] = c.tol;
  std::size_t pass = std::count_if(recs.begin(), recs.end(), [](const Record& r) { return r.pass; });
  h["passed"] = pass;
  h["failed"] = recs.size() - pass;
  return h;
}

}  // namespace

std::string render_json(const std::vector<Record>& recs, const RunConfig& c) {
  json doc = header(recs, c);
  json checks = json::array();
  for (const auto& r : recs)
    checks.push_back({{"check_id", r.check_id},
                      {"anchor", r.anchor},
                      {"params", r.params},
                      {"status", r.pass ? "pass" : "fail"},
                      {"witness_digest", r.witness_digest}});
  doc["checks"] = checks;
  return doc.dump(2) + "\n";
}

std::string render_markdown(const std::vector<Record>& recs, const RunConfig& c) {
  json h = header(recs, c);
  std::ostringstream os;
  os << "# wfseq " << c.command << "\n\n";
  os << "seed " << c.seed << ", " << h["passed"].get<std::size_t>() << " passed, " << h["failed"].get<std::size_t>()
     << " failed\n\n";
  os << "| check | statement | status | digest |\n|---|---|---|---|\n";
  for (const auto& r : recs)
    os << "| `" << r.check_id << "` | " << r.anchor << " | " << (r.pass ? "pass" : "**FAIL**") << " | `" << r.witness_digest
       << "` |\n";
  return os.str();
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<Record> recs;
  try {
    validate(c);
    recs = run_tasks(command_tasks(c));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::UnknownFamily || e.code() == ErrorCode::UnsupportedRange) {
      err << "wfseq: " << e.what() << "\n";
      return 2;
    }
    err << "wfseq: " << e.what() << "\n";
    return 1;
  }
  if (recs.empty()) {
    err << "wfseq: no checks selected\n";
    return 2;
  }
  std::string text = c.format == "md" ? render_markdown(recs, c) : render_json(recs, c);
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "wfseq: cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
  }
  bool ok = std::all_of(recs.begin(), recs.end(), [](const Record& r) { return r.pass; });
  std::size_t pass = std::count_if(recs.begin(), recs.end(), [](const Record& r) { return r.pass; });
  err << pass << "/" << recs.size() << " checks passed\n";
  return ok ? 0 : 1;
}

}  // namespace wfseq::cli
