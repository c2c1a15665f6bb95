#include "toral/blockatlas.hpp"
#include "toral/grassmannian.hpp"
#include "toral/specfile.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace toral;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kComputation = 1, kValidation = 2, kCap = 3, kUndecided = 4 };

struct Output {
  json data = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string dot;
  int exit_code = kOk;
};

struct Options {
  std::string spec;
  std::string format = "text";
  std::string out;
  std::string bounds;
  int degree = 3;
  int grid = 0;
  long long exponent_cap = 0;
  long long truncation = 0;
  bool all = false;
  std::string chain;
  std::string limit;
};

json num(const BigInt& x) {
  if (x >= BigInt(std::numeric_limits<long long>::min()) && x <= BigInt(std::numeric_limits<long long>::max()))
    return static_cast<long long>(x);
  return x.str();
}

json nums(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

json vec(const IntVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json columns(const IntMatrix& m) {
  json a = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(vec(m.col(j)));
  return a;
}

json group_json(const FiniteAbelianGroup& g) {
  return json{{"description", g.describe()}, {"invariant_factors", nums(g.invariant_factors)}, {"free_rank", g.free_rank}};
}

std::string join(const std::vector<BigInt>& v, const std::string& sep = " ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].str();
  return s;
}

std::string bool_text(bool b) { return b ? "yes" : "no"; }

struct Loaded {
  SpecFile file;
  ToralGroupSpec spec;
};

Loaded load(const Options& o) {
  SpecFile f = load_spec(o.spec);
  return {f, build_spec(f)};
}

BigInt truncation_of(const Options& o, const Catalog& c) {
  if (o.truncation > 0) return o.truncation;
  if (c.truncation > 0) return c.truncation;
  return 12;
}

// "Name" or "Name(p1,p2,...)".
CatalogEntry parse_member(const ToralGroupSpec& spec, const Catalog& c, const std::string& text) {
  std::string name = text, args;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw SpecError("malformed member: " + text);
    name = text.substr(0, open);
    args = text.substr(open + 1, text.size() - open - 2);
  }
  const int fi = c.family_index(name);
  if (fi < 0) throw SpecError("unknown family: " + name);
  std::vector<BigInt> params;
  std::stringstream ss(args);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      params.emplace_back(tok);
    } catch (const std::exception&) {
      throw SpecError("malformed parameter in " + text);
    }
  }
  const Family& f = c.families[static_cast<size_t>(fi)];
  if (!f.admits(params)) throw SpecError("parameters not admitted by " + name + ": " + text);
  return {fi, params, f.instantiate(spec, params)};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Output cmd_isotypic(const Options& o) {
  auto [file, spec] = load(o);
  const auto& d = spec.context()->isotypic;
  Output out;
  out.data["spec"] = file.name;
  out.data["rank"] = d.rank;
  out.data["L"] = group_json(d.L);
  out.data["L_f"] = group_json(d.L_f);
  json pieces = json::array();
  out.header = {"piece", "basis", "dim", "multiplicity", "simple_dim", "division_dim", "center_dim", "trivial_type"};
  for (size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& p = d.pieces[i];
    pieces.push_back(json{{"basis", columns(p.lattice.basis())},
                          {"dim", p.dim},
                          {"multiplicity", p.multiplicity},
                          {"simple_dim", p.simple_dim},
                          {"division_dim", p.division_dim},
                          {"center_dim", p.center_dim},
                          {"trivial_type", p.is_trivial_type}});
    out.rows.push_back({std::to_string(i), p.lattice.describe(), std::to_string(p.dim), std::to_string(p.multiplicity),
                        std::to_string(p.simple_dim), std::to_string(p.division_dim), std::to_string(p.center_dim),
                        bool_text(p.is_trivial_type)});
  }
  out.data["pieces"] = pieces;
  return out;
}

Output cmd_cohomology(const Options& o) {
  if (o.degree < 0 || o.degree > 3) throw SpecError("--degree must lie in 0..3");
  auto [file, spec] = load(o);
  auto h = cohomology(spec.rep(), o.degree);
  Output out;
  out.data["spec"] = file.name;
  out.data["degree"] = o.degree;
  out.data["group"] = group_json(h->group());
  json gens = json::array();
  out.header = {"generator", "order", "normalized_cocycle"};
  const auto& g = h->group();
  for (size_t i = 0; i < h->generators().size(); ++i) {
    const BigInt order = i < g.invariant_factors.size() ? g.invariant_factors[i] : BigInt(0);
    gens.push_back(json{{"order", order == 0 ? json("inf") : num(order)}, {"cocycle", vec(h->generators()[i])}});
    std::vector<BigInt> vals(h->generators()[i].data(), h->generators()[i].data() + h->generators()[i].size());
    out.rows.push_back({std::to_string(i), order == 0 ? "inf" : order.str(), join(vals)});
  }
  out.data["generators"] = gens;
  return out;
}

Output cmd_classify(const Options& o) {
  auto [file, spec] = load(o);
  SubgroupConstraints c;
  BigInt cap = o.exponent_cap > 0 ? BigInt(o.exponent_cap) : file.bounds.exponent.value_or(BigInt(4));
  c.max_exponent = cap;
  auto classes = classify(spec, c);
  Output out;
  out.data["spec"] = file.name;
  out.data["exponent_cap"] = num(cap);
  json arr = json::array();
  out.header = {"class", "dim", "pi0", "annihilator", "coordinates", "fibre", "finite_weyl"};
  for (size_t i = 0; i < classes.size(); ++i) {
    const auto& k = classes[i];
    const auto& fib = lift_fibre(k.S, spec.epsilon())->group();
    const std::string fibre = fib.is_finite() ? fib.order().str() : "inf";
    arr.push_back(json{{"dim", k.S.dim()},
                       {"pi0", group_json(k.S.pi0())},
                       {"annihilator", columns(k.S.ann().basis())},
                       {"coordinates", nums(k.coordinates)},
                       {"fibre", fibre},
                       {"finite_weyl", has_finite_weyl(k)}});
    out.rows.push_back({std::to_string(i), std::to_string(k.S.dim()), k.S.pi0().describe(), k.S.ann().describe(),
                        join(k.coordinates), fibre, bool_text(has_finite_weyl(k))});
  }
  out.data["classes"] = arr;
  return out;
}

Output cmd_lambda_fibres(const Options& o) {
  auto [file, spec] = load(o);
  const int n = o.grid > 0 ? o.grid : file.bounds.grid.value_or(12);
  if (n > 64) throw CapExceeded("--grid is capped at 64");
  const auto& ctx = spec.context();
  std::vector<BigInt> labels;
  for (int i = 1; i <= n; ++i) labels.emplace_back(i);
  labels.emplace_back(0);
  auto name = [](const BigInt& x) { return x == 0 ? std::string("inf") : x.str(); };
  Output out;
  out.data["spec"] = file.name;
  out.data["grid"] = n;
  out.header = {"m\\n"};
  for (const auto& c : labels) out.header.push_back(name(c));
  std::vector<SubgroupClass> khat;
  for (const auto& c : labels) khat.push_back(moving_label(spec, c));
  json rows = json::array();
  BigInt threshold = 0;
  for (const auto& m : labels) {
    auto a = central_label(ctx, m);
    std::vector<std::string> row{name(m)};
    json sizes = json::array();
    for (const auto& k : khat) {
      auto f = lambda_fibre(spec, a, k);
      threshold = f.threshold;
      row.push_back(std::to_string(f.classes.size()));
      sizes.push_back(f.classes.size());
    }
    rows.push_back(json{{"m", name(m)}, {"sizes", sizes}});
    out.rows.push_back(std::move(row));
  }
  out.data["columns"] = json(std::vector<std::string>(out.header.begin() + 1, out.header.end()));
  out.data["rows"] = rows;
  out.data["hit_threshold"] = num(threshold);
  return out;
}

Output cmd_neighbourhood(const Options& o) {
  auto [file, spec] = load(o);
  std::vector<std::optional<BigInt>> thresholds;
  for (const auto& tok : split_list(o.bounds)) {
    if (tok == "inf") {
      thresholds.emplace_back(std::nullopt);
      continue;
    }
    try {
      thresholds.emplace_back(BigInt(tok));
    } catch (const std::exception&) {
      throw SpecError("malformed threshold: " + tok);
    }
  }
  const size_t pieces = spec.context()->xi_pieces.size() - (spec.context()->isotypic.trivial_piece() ? 1 : 0);
  if (thresholds.size() != pieces)
    throw SpecError("--bounds needs " + std::to_string(pieces) + " thresholds (one per nontrivial piece)");
  Output out;
  out.data["spec"] = file.name;
  json th = json::array();
  for (const auto& t : thresholds) th.push_back(t ? num(*t) : json("inf"));
  out.data["thresholds"] = th;
  const BigInt trunc = truncation_of(o, file.catalog);
  out.data["truncation"] = num(trunc);
  json members = json::array();
  out.header = {"member", "piece_exponents", "in_neighbourhood"};
  for (const auto& e : truncate(spec, file.catalog, trunc)) {
    if (!e.cls.image->is_full) continue;
    const bool in = in_neighbourhood(e.cls, thresholds);
    auto ex = piece_exponents(e.cls);
    members.push_back(json{{"member", e.cls.label}, {"piece_exponents", nums(ex)}, {"in_neighbourhood", in}});
    out.rows.push_back({e.cls.label, join(ex), bool_text(in)});
  }
  out.data["members"] = members;
  return out;
}

Output cmd_converges(const Options& o) {
  auto [file, spec] = load(o);
  const Catalog& cat = file.catalog;
  Output out;
  out.data["spec"] = file.name;
  json checks = json::array();
  out.header = {"chain", "limit", "converges", "reason"};
  auto record = [&](const std::vector<SubgroupClass>& chain, const SubgroupClass& limit) {
    auto rep = converges(chain, limit);
    std::string names;
    json labels = json::array();
    for (const auto& k : chain) {
      names += (names.empty() ? "" : " ") + k.label;
      labels.push_back(k.label);
    }
    checks.push_back(json{{"chain", labels}, {"limit", limit.label}, {"converges", rep.converges}, {"reason", rep.reason}});
    out.rows.push_back({names, limit.label, bool_text(rep.converges), rep.reason});
  };
  if (!o.chain.empty() || !o.limit.empty()) {
    if (o.chain.empty() || o.limit.empty()) throw SpecError("--chain and --limit go together");
    std::vector<SubgroupClass> chain;
    for (const auto& m : split_list(o.chain)) chain.push_back(parse_member(spec, cat, m).cls);
    record(chain, parse_member(spec, cat, o.limit).cls);
  } else {
    for (const auto& rule : cat.limits) {
      const int si = cat.family_index(rule.source), ti = cat.family_index(rule.target);
      if (si < 0 || ti < 0) throw SpecError("unknown family in limit " + rule.source + " -> " + rule.target);
      const Family& src = cat.families[static_cast<size_t>(si)];
      const Family& tgt = cat.families[static_cast<size_t>(ti)];
      std::vector<BigInt> base(src.params.size(), BigInt(1)), rest(tgt.params.size(), BigInt(1));
      auto seq = saturating_sequence(spec, src, base, rule.param, 6);
      if (seq.empty() || !tgt.admits(rest)) continue;
      std::vector<SubgroupClass> chain;
      for (const auto& p : seq) chain.push_back(src.instantiate(spec, p));
      record(chain, tgt.instantiate(spec, rest));
    }
  }
  out.data["checks"] = checks;
  return out;
}

const char* kPalette[] = {"lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon", "lightcyan", "wheat"};

Output cmd_partition(const Options& o) {
  auto [file, spec] = load(o);
  Catalog cat = file.catalog;
  if (o.truncation > 0) cat.truncation = o.truncation;
  Output out;
  out.data["spec"] = file.name;
  if (cat.families.empty()) {
    out.data["threshold"] = 0;
    out.data["truncation"] = 0;
    out.data["rounds"] = 0;
    out.data["blocks"] = json::array();
    out.data["check"] = json{{"ok", true}};
    out.header = {"member", "block", "dominant", "round"};
    out.dot = "digraph cotoral {\n}\n";
    return out;
  }
  auto p = partition(spec, cat);
  auto check = check_partition(spec, cat, p);
  out.data["threshold"] = num(p.threshold);
  out.data["truncation"] = num(p.truncation);
  out.data["rounds"] = p.rounds;
  json blocks = json::array();
  std::vector<int> block_of(p.entries.size(), -1);
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& blk = p.blocks[b];
    json nb = json::array(), mem = json::array();
    for (size_t i : blk.neighbourhood) nb.push_back(p.entries[i].cls.label);
    for (size_t i : blk.members) {
      mem.push_back(p.entries[i].cls.label);
      block_of[i] = static_cast<int>(b);
    }
    blocks.push_back(json{{"dominant", p.entries[blk.dominant].cls.label},
                          {"threshold", num(blk.threshold)},
                          {"round", blk.round},
                          {"neighbourhood", nb},
                          {"members", mem}});
  }
  out.data["blocks"] = blocks;
  out.data["check"] = json{{"ok", check.ok()},         {"disjoint", check.disjoint}, {"covering", check.covering},
                           {"closed", check.closed},   {"dominated", check.dominated}, {"clopen", check.clopen},
                           {"rounds_ok", check.rounds_ok}, {"failure", check.failure}};
  out.header = {"member", "block", "dominant", "round"};
  for (size_t i = 0; i < p.entries.size(); ++i) {
    const int b = block_of[i];
    out.rows.push_back({p.entries[i].cls.label, std::to_string(b),
                        b < 0 ? "" : p.entries[p.blocks[static_cast<size_t>(b)].dominant].cls.label,
                        b < 0 ? "" : std::to_string(p.blocks[static_cast<size_t>(b)].round)});
  }
  // Cotoral covering relations, blocks as clusters.
  std::ostringstream dot;
  dot << "digraph cotoral {\n  rankdir=BT;\n  node [shape=box, style=filled];\n";
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    dot << "  subgraph cluster_" << b << " {\n    label=\"block " << b << ": "
        << p.entries[p.blocks[b].dominant].cls.label << "\";\n";
    for (size_t i : p.blocks[b].members)
      dot << "    n" << i << " [label=\"" << p.entries[i].cls.label << "\", fillcolor=" << kPalette[b % 8] << "];\n";
    dot << "  }\n";
  }
  for (size_t i = 0; i < p.entries.size(); ++i)
    for (size_t j : p.cotoral_up[i]) {
      bool covering = true;
      for (size_t k : p.cotoral_up[i])
        if (k != j && std::find(p.cotoral_up[k].begin(), p.cotoral_up[k].end(), j) != p.cotoral_up[k].end()) covering = false;
      if (covering) dot << "  n" << i << " -> n" << j << ";\n";
    }
  dot << "}\n";
  out.dot = dot.str();
  if (!check.ok()) out.exit_code = kComputation;
  return out;
}

Output cmd_cb_rank(const Options& o) {
  auto [file, spec] = load(o);
  auto shape = predicted_block_shape(spec.context()->isotypic);
  Output out;
  out.data["spec"] = file.name;
  const int r = cb_rank(file.catalog);
  out.data["cb_rank"] = r;
  out.data["predicted_total"] = shape.total();
  out.data["matches_prediction"] = r == shape.total();
  json fams = json::array();
  out.header = {"family", "point_rank"};
  auto ranks = point_ranks(file.catalog);
  for (size_t i = 0; i < ranks.size(); ++i) {
    fams.push_back(json{{"family", file.catalog.families[i].name}, {"point_rank", ranks[i]}});
    out.rows.push_back({file.catalog.families[i].name, std::to_string(ranks[i])});
  }
  out.data["families"] = fams;
  return out;
}

Output cmd_grassmannian(const Options& o) {
  auto [file, spec] = load(o);
  BigInt bound = file.bounds.index.value_or(BigInt(20));
  if (!o.bounds.empty()) {
    try {
      bound = BigInt(o.bounds);
    } catch (const std::exception&) {
      throw SpecError("--bounds must be an index bound");
    }
  }
  auto census = enumerate_sublattices(spec.rep(), bound, !o.all);
  ComponentReport report;
  if (!o.all) report = classify_components(census);
  Output out;
  out.data["spec"] = file.name;
  out.data["bound"] = num(bound);
  out.data["invariant_only"] = !o.all;
  json counts = json::array();
  for (size_t n = 1; n < census.counts.size(); ++n) counts.push_back(census.counts[n]);
  out.data["counts"] = counts;
  json comps = json::array();
  for (const auto& c : report.components) {
    json cong = json::array();
    for (const auto& g : c.congruences)
      cong.push_back(json{{"i", g.i}, {"j", g.j}, {"sign", g.sign}, {"modulus", num(g.modulus)}});
    comps.push_back(json{{"representative", columns(census.entries[c.representative].lattice.basis())},
                         {"members", c.members.size()},
                         {"parameter_count", c.parameter_count},
                         {"congruences", cong}});
  }
  out.data["components"] = comps;
  json und = json::array();
  for (const auto& [a, b] : report.undecided)
    und.push_back(json{census.entries[a].lattice.describe(), census.entries[b].lattice.describe()});
  out.data["undecided"] = und;
  out.header = {"index", "basis", "invariant", "component", "parameters"};
  for (const auto& e : census.entries)
    out.rows.push_back({e.index.str(), e.lattice.describe(), bool_text(e.invariant),
                        e.component < 0 ? "" : std::to_string(e.component), join(e.parameters)});
  if (!report.undecided.empty()) out.exit_code = kUndecided;
  return out;
}

Output cmd_shape(const Options& o) {
  auto [file, spec] = load(o);
  auto s = predicted_block_shape(spec.context()->isotypic);
  Output out;
  out.data["spec"] = file.name;
  out.data["poset_rank"] = s.poset_rank;
  out.data["stone_ranks"] = s.stone_ranks;
  out.data["total"] = s.total();
  out.data["description"] = s.describe();
  out.header = {"factor", "rank"};
  out.rows.push_back({"poset", std::to_string(s.poset_rank)});
  for (size_t i = 0; i < s.stone_ranks.size(); ++i) out.rows.push_back({"stone " + std::to_string(i), std::to_string(s.stone_ranks[i])});
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Output& out, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << out.data.dump(2) << "\n";
  } else if (format == "csv") {
    if (out.header.empty()) throw SpecError("csv output is not available for this command");
    auto line = [&](const std::vector<std::string>& r) {
      for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << "\n";
    };
    line(out.header);
    for (const auto& r : out.rows) line(r);
  } else if (format == "dot") {
    if (out.dot.empty()) throw SpecError("dot output is only available for partition");
    os << out.dot;
  } else {
    for (const auto& [k, v] : out.data.items())
      if (!v.is_array() && !v.is_object()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      else if (v.is_object() && v.contains("description")) os << k << ": " << v["description"].get<std::string>() << "\n";
    if (!out.header.empty()) {
      std::vector<size_t> width(out.header.size(), 0);
      for (size_t i = 0; i < out.header.size(); ++i) width[i] = out.header[i].size();
      for (const auto& r : out.rows)
        for (size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
      auto line = [&](const std::vector<std::string>& r) {
        std::string s;
        for (size_t i = 0; i < r.size(); ++i) {
          s += r[i];
          if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
        }
        os << s << "\n";
      };
      os << "\n";
      line(out.header);
      for (const auto& r : out.rows) line(r);
    }
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subgroup structure of toral compact Lie groups"};
  app.require_subcommand(1);
  Options o;
  using Handler = Output (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--spec", o.spec, "built-in spec name or spec file path")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv", "dot"}));
    sub->add_option("--out", o.out, "write output to this file");
    commands.emplace_back(sub, h);
    return sub;
  };
  add("isotypic", "isotypic decomposition of the lattice", cmd_isotypic);
  add("cohomology", "H^k(W; Λ₀) with generators", cmd_cohomology)->add_option("--degree", o.degree, "degree 0..3");
  add("classify", "classes with image W up to an exponent cap", cmd_classify)
      ->add_option("--exponent-cap", o.exponent_cap, "bound on the exponent of π₀(S)");
  add("lambda-fibres", "fibre sizes of λ over the label grid", cmd_lambda_fibres)->add_option("--grid", o.grid, "grid size");
  auto* nb = add("neighbourhood", "catalog members in a standard neighbourhood", cmd_neighbourhood);
  nb->add_option("--bounds", o.bounds, "thresholds per nontrivial piece, comma separated, 'inf' allowed")->required();
  nb->add_option("--truncation", o.truncation, "parameter bound");
  auto* conv = add("converges", "convergence of chains", cmd_converges);
  conv->add_option("--chain", o.chain, "comma-separated catalog members, e.g. C(1),C(2),C(6)");
  conv->add_option("--limit", o.limit, "catalog member");
  add("partition", "block partition of the catalog", cmd_partition)->add_option("--truncation", o.truncation, "parameter bound");
  add("cb-rank", "Cantor-Bendixson rank of the catalog", cmd_cb_rank);
  auto* gr = add("grassmannian", "census and components of invariant sublattices", cmd_grassmannian);
  gr->add_option("--bounds", o.bounds, "index bound");
  gr->add_flag("--all", o.all, "include non-invariant sublattices and skip classification");
  add("shape", "predicted block shape", cmd_shape);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      Output out = handler(o);
      std::string text = render(out, o.format);
      if (o.out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw SpecError("cannot write " + o.out);
        f << text;
        if (!f) throw SpecError("cannot write " + o.out);
      }
      return out.exit_code;
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const DimensionError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputation;
  }
  return kOk;
}
