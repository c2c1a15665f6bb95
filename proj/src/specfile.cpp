#include "toral/specfile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace toral {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}
  SpecFile run();

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError("line " + std::to_string(line_no_) + ": " + msg);
  }
  long long integer(const std::string& s) const;
  BigInt big(const std::string& s) const;
  AffineForm form(const std::string& s, const Family& f) const;
  Family& current_family() {
    if (spec_.catalog.families.empty()) fail("'" + key_ + "' outside a family");
    return spec_.catalog.families.back();
  }
  void expect_args(const std::vector<std::string>& w, size_t n) const {
    if (w.size() != n + 1) fail("'" + key_ + "' takes " + std::to_string(n) + " argument(s)");
  }

  const std::string& text_;
  SpecFile spec_;
  int line_no_ = 0;
  std::string key_;
};

long long Parser::integer(const std::string& s) const {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) fail("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail("not an integer: '" + s + "'");
  }
}

BigInt Parser::big(const std::string& s) const {
  if (s.empty()) fail("empty number");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) fail("not an integer: '" + s + "'");
  for (size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail("not an integer: '" + s + "'");
  return BigInt(s);
}

AffineForm Parser::form(const std::string& s0, const Family& f) const {
  AffineForm a;
  a.coeffs.assign(f.params.size(), BigInt(0));
  std::string s = s0;
  if (!s.empty() && s[0] == '(') {
    auto close = s.find(')');
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '/') fail("bad form '" + s0 + "'");
    a.denominator = big(s.substr(close + 2));
    if (a.denominator <= 0) fail("denominator must be positive in '" + s0 + "'");
    s = s.substr(1, close - 1);
  }
  if (s.empty()) fail("empty form");
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("bad form '" + s0 + "'");
    }
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    BigInt coef = j > i ? BigInt(s.substr(i, j - i)) : BigInt(1);
    bool has_num = j > i;
    if (j < s.size() && s[j] == '*') {
      if (!has_num) fail("bad form '" + s0 + "'");
      ++j;
    }
    size_t k = j;
    while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) ++k;
    std::string name = s.substr(j, k - j);
    if (name.empty()) {
      if (!has_num) fail("bad form '" + s0 + "'");
      a.constant += sign * coef;
    } else {
      size_t p = 0;
      while (p < f.params.size() && f.params[p] != name) ++p;
      if (p == f.params.size()) fail("unknown parameter '" + name + "' in family " + f.name);
      a.coeffs[p] += sign * coef;
    }
    i = k;
  }
  return a;
}

SpecFile Parser::run() {
  std::istringstream in(text_);
  std::string line;
  bool have_rank = false, have_group = false;
  while (std::getline(in, line)) {
    ++line_no_;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto w = split_words(line);
    if (w.empty()) continue;
    key_ = w[0];
    if (key_ == "name") {
      expect_args(w, 1);
      spec_.name = w[1];
      spec_.catalog.name = w[1];
    } else if (key_ == "rank") {
      expect_args(w, 1);
      spec_.rank = static_cast<int>(integer(w[1]));
      if (spec_.rank < 0) fail("rank must be non-negative");
      have_rank = true;
    } else if (key_ == "group") {
      if (w.size() != 3) fail("'group' takes a kind and a size");
      int n = static_cast<int>(integer(w[2]));
      if (w[1] == "cyclic") {
        spec_.group.kind = GroupInput::Kind::Cyclic;
        spec_.group.order = n;
      } else if (w[1] == "permutations") {
        spec_.group.kind = GroupInput::Kind::Permutations;
        spec_.group.degree = n;
      } else if (w[1] == "table") {
        spec_.group.kind = GroupInput::Kind::Table;
        spec_.group.order = n;
      } else {
        fail("unknown group kind '" + w[1] + "'");
      }
      have_group = true;
    } else if (key_ == "perm" || key_ == "row") {
      bool perm = key_ == "perm";
      if (!have_group || (perm != (spec_.group.kind == GroupInput::Kind::Permutations)) ||
          (!perm && spec_.group.kind != GroupInput::Kind::Table))
        fail("'" + key_ + "' does not match the group kind");
      std::vector<int> r;
      for (size_t i = 1; i < w.size(); ++i) r.push_back(static_cast<int>(integer(w[i])));
      spec_.group.rows.push_back(r);
    } else if (key_ == "rho") {
      if (!have_rank) fail("'rho' before 'rank'");
      const int r = spec_.rank;
      if (w.size() != static_cast<size_t>(r * r) + 1) fail("'rho' needs rank^2 entries");
      IntMatrix m(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = big(w[static_cast<size_t>(i * r + j) + 1]);
      spec_.rho.push_back(m);
    } else if (key_ == "epsilon") {
      if (w.size() < 2) fail("'epsilon' needs a selector");
      if (w[1] == "zero" && w.size() == 2) {
        spec_.epsilon.kind = EpsilonInput::Kind::Zero;
      } else if (w[1] == "generator" && w.size() == 3) {
        spec_.epsilon.kind = EpsilonInput::Kind::Generator;
        spec_.epsilon.index = static_cast<int>(integer(w[2]));
      } else if (w[1] == "cocycle" && w.size() == 2) {
        spec_.epsilon.kind = EpsilonInput::Kind::Cocycle;
      } else {
        fail("bad epsilon selector");
      }
    } else if (key_ == "value") {
      if (spec_.epsilon.kind != EpsilonInput::Kind::Cocycle) fail("'value' needs 'epsilon cocycle'");
      if (w.size() < 5 || w[4] != ":") fail("'value' takes three elements, ':' and the values");
      std::array<int, 3> t{};
      for (int i = 0; i < 3; ++i) t[static_cast<size_t>(i)] = static_cast<int>(integer(w[static_cast<size_t>(i) + 1]));
      std::vector<BigInt> v;
      for (size_t i = 5; i < w.size(); ++i) v.push_back(big(w[i]));
      if (static_cast<int>(v.size()) != spec_.rank) fail("'value' needs rank entries");
      spec_.epsilon.values.emplace_back(t, v);
    } else if (key_ == "bounds") {
      expect_args(w, 2);
      if (w[1] == "exponent") spec_.bounds.exponent = big(w[2]);
      else if (w[1] == "index") spec_.bounds.index = big(w[2]);
      else if (w[1] == "grid") spec_.bounds.grid = static_cast<int>(integer(w[2]));
      else fail("unknown bound '" + w[1] + "'");
    } else if (key_ == "threshold") {
      expect_args(w, 1);
      spec_.catalog.threshold = big(w[1]);
    } else if (key_ == "truncation") {
      expect_args(w, 1);
      spec_.catalog.truncation = big(w[1]);
    } else if (key_ == "family") {
      if (w.size() < 2) fail("'family' needs a name");
      if (spec_.catalog.family_index(w[1]) >= 0) fail("duplicate family '" + w[1] + "'");
      Family f;
      f.name = w[1];
      f.params.assign(w.begin() + 2, w.end());
      spec_.catalog.families.push_back(f);
    } else if (key_ == "image") {
      Family& f = current_family();
      if (w.size() == 2 && w[1] == "all") {
        f.image.clear();
      } else {
        if (w.size() < 2) fail("'image' needs elements");
        f.image.clear();
        for (size_t i = 1; i < w.size(); ++i) f.image.push_back(static_cast<int>(integer(w[i])));
      }
    } else if (key_ == "ann") {
      Family& f = current_family();
      if (w.size() != static_cast<size_t>(spec_.rank) + 1) fail("'ann' needs rank forms");
      std::vector<AffineForm> col;
      for (size_t i = 1; i < w.size(); ++i) col.push_back(form(w[i], f));
      f.generators.push_back(col);
    } else if (key_ == "constraint") {
      Family& f = current_family();
      if (w.size() != 4 || w[2] != "mod") fail("'constraint' takes FORM mod M");
      Congruence c{form(w[1], f), big(w[3])};
      if (c.modulus <= 0) fail("modulus must be positive");
      f.constraints.push_back(c);
    } else if (key_ == "lift") {
      Family& f = current_family();
      if (w.size() < 4 || w[3] != ":") fail("'lift' takes two elements, ':' and one form per generator");
      LiftValue lv;
      lv.a = static_cast<int>(integer(w[1]));
      lv.b = static_cast<int>(integer(w[2]));
      for (size_t i = 4; i < w.size(); ++i) lv.values.push_back(form(w[i], f));
      f.lift.push_back(lv);
    } else if (key_ == "limit") {
      expect_args(w, 3);
      int si = spec_.catalog.family_index(w[1]);
      if (si < 0) fail("unknown family '" + w[1] + "'");
      if (spec_.catalog.family_index(w[3]) < 0) fail("unknown family '" + w[3] + "'");
      const auto& ps = spec_.catalog.families[static_cast<size_t>(si)].params;
      int p = -1;
      for (size_t i = 0; i < ps.size(); ++i)
        if (ps[i] == w[2]) p = static_cast<int>(i);
      if (p < 0) fail("unknown parameter '" + w[2] + "'");
      spec_.catalog.limits.push_back({w[1], p, w[3]});
    } else if (key_ == "fusion") {
      if (w.size() < 3) fail("'fusion' takes a fibre bound and families");
      Fusion fu;
      fu.fibre_bound = static_cast<int>(integer(w[1]));
      for (size_t i = 2; i < w.size(); ++i) {
        if (spec_.catalog.family_index(w[i].substr(0, w[i].find('('))) < 0) fail("unknown family in '" + w[i] + "'");
        fu.families.push_back(w[i]);
      }
      spec_.catalog.fusions.push_back(fu);
    } else {
      fail("unknown key '" + key_ + "'");
    }
  }
  line_no_ = 0;
  if (spec_.name.empty()) throw SpecError("missing 'name'");
  if (!have_rank) throw SpecError("missing 'rank'");
  if (!have_group) throw SpecError("missing 'group'");
  return spec_;
}

std::string format_form(const AffineForm& a, const Family& f) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    const BigInt& c = a.coeffs[i];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    BigInt m = abs_value(c);
    if (m != 1) os << m << '*';
    os << f.params[i];
    first = false;
  }
  if (a.constant != 0 || first) {
    if (a.constant < 0) os << '-';
    else if (!first) os << '+';
    os << abs_value(a.constant);
  }
  if (a.denominator != 1) return "(" + os.str() + ")/" + a.denominator.str();
  return os.str();
}

}  // namespace

bool SpecFile::operator==(const SpecFile& o) const {
  if (name != o.name || rank != o.rank || !(group == o.group) || !(epsilon == o.epsilon) || !(bounds == o.bounds) ||
      !(catalog == o.catalog) || rho.size() != o.rho.size())
    return false;
  for (size_t i = 0; i < rho.size(); ++i)
    if (rho[i].rows() != o.rho[i].rows() || rho[i].cols() != o.rho[i].cols() || rho[i] != o.rho[i]) return false;
  return true;
}

SpecFile parse_spec(const std::string& text) { return Parser(text).run(); }

std::string serialize(const SpecFile& s) {
  std::ostringstream os;
  os << "name " << s.name << "\n";
  os << "rank " << s.rank << "\n";
  switch (s.group.kind) {
    case GroupInput::Kind::Cyclic: os << "group cyclic " << s.group.order << "\n"; break;
    case GroupInput::Kind::Permutations: os << "group permutations " << s.group.degree << "\n"; break;
    case GroupInput::Kind::Table: os << "group table " << s.group.order << "\n"; break;
  }
  for (const auto& r : s.group.rows) {
    os << (s.group.kind == GroupInput::Kind::Permutations ? "perm" : "row");
    for (int x : r) os << ' ' << x;
    os << "\n";
  }
  for (const auto& m : s.rho) {
    os << "rho";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) os << ' ' << m(i, j);
    os << "\n";
  }
  switch (s.epsilon.kind) {
    case EpsilonInput::Kind::Zero: os << "epsilon zero\n"; break;
    case EpsilonInput::Kind::Generator: os << "epsilon generator " << s.epsilon.index << "\n"; break;
    case EpsilonInput::Kind::Cocycle:
      os << "epsilon cocycle\n";
      for (const auto& [t, v] : s.epsilon.values) {
        os << "value " << t[0] << ' ' << t[1] << ' ' << t[2] << " :";
        for (const auto& x : v) os << ' ' << x;
        os << "\n";
      }
      break;
  }
  if (s.bounds.exponent) os << "bounds exponent " << *s.bounds.exponent << "\n";
  if (s.bounds.index) os << "bounds index " << *s.bounds.index << "\n";
  if (s.bounds.grid) os << "bounds grid " << *s.bounds.grid << "\n";
  if (s.catalog.threshold != 0) os << "threshold " << s.catalog.threshold << "\n";
  if (s.catalog.truncation != 0) os << "truncation " << s.catalog.truncation << "\n";
  for (const auto& f : s.catalog.families) {
    os << "family " << f.name;
    for (const auto& p : f.params) os << ' ' << p;
    os << "\n";
    if (!f.image.empty()) {
      os << "  image";
      for (int e : f.image) os << ' ' << e;
      os << "\n";
    }
    for (const auto& c : f.constraints) os << "  constraint " << format_form(c.form, f) << " mod " << c.modulus << "\n";
    for (const auto& g : f.generators) {
      os << "  ann";
      for (const auto& a : g) os << ' ' << format_form(a, f);
      os << "\n";
    }
    for (const auto& lv : f.lift) {
      os << "  lift " << lv.a << ' ' << lv.b << " :";
      for (const auto& a : lv.values) os << ' ' << format_form(a, f);
      os << "\n";
    }
  }
  for (const auto& l : s.catalog.limits) {
    const auto& f = s.catalog.families[static_cast<size_t>(s.catalog.family_index(l.source))];
    os << "limit " << l.source << ' ' << f.params[static_cast<size_t>(l.param)] << ' ' << l.target << "\n";
  }
  for (const auto& fu : s.catalog.fusions) {
    os << "fusion " << fu.fibre_bound;
    for (const auto& f : fu.families) os << ' ' << f;
    os << "\n";
  }
  return os.str();
}

std::shared_ptr<const FiniteGroup> build_group(const GroupInput& g) {
  try {
    switch (g.kind) {
      case GroupInput::Kind::Cyclic:
        if (g.order > kMaxGroupOrder) throw CapExceeded("group order exceeds " + std::to_string(kMaxGroupOrder));
        return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(g.order));
      case GroupInput::Kind::Permutations: {
        for (const auto& r : g.rows)
          if (static_cast<int>(r.size()) != g.degree) throw SpecError("permutation of the wrong degree");
        if (g.rows.empty()) return std::make_shared<const FiniteGroup>(FiniteGroup::trivial());
        return std::make_shared<const FiniteGroup>(FiniteGroup::from_permutations(g.rows));
      }
      case GroupInput::Kind::Table:
        if (g.order > kMaxGroupOrder) throw CapExceeded("group order exceeds " + std::to_string(kMaxGroupOrder));
        if (static_cast<int>(g.rows.size()) != g.order) throw SpecError("table needs one row per element");
        return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(g.rows));
    }
  } catch (const GroupError& e) {
    if (std::string(e.what()).find("exceeds") != std::string::npos) throw CapExceeded(e.what());
    throw SpecError(e.what());
  }
  throw SpecError("unknown group kind");
}

IntegralRep build_rep(const SpecFile& s) {
  if (s.rank > kMaxRank) throw CapExceeded("rank exceeds " + std::to_string(kMaxRank));
  auto g = build_group(s.group);
  if (g->order() > kMaxGroupOrder) throw CapExceeded("group order exceeds " + std::to_string(kMaxGroupOrder));
  if (s.rho.size() != g->generators().size())
    throw SpecError("need one 'rho' matrix per group generator (" + std::to_string(g->generators().size()) + ")");
  try {
    return IntegralRep::from_generators(g, s.rank, s.rho);
  } catch (const GroupError& e) {
    throw SpecError(e.what());
  }
}

ToralGroupSpec build_spec(const SpecFile& s) {
  IntegralRep rep = build_rep(s);
  const int n = rep.group->order();
  if (s.bounds.index && *s.bounds.index > kMaxIndexBound)
    throw CapExceeded("index bound exceeds " + std::to_string(kMaxIndexBound));
  CochainSpace sp{n, 3, s.rank};
  IntVector eps = IntVector::Zero(static_cast<Eigen::Index>(sp.size()));
  if (s.epsilon.kind == EpsilonInput::Kind::Generator) {
    auto h3 = cohomology(rep, 3);
    if (s.epsilon.index < 0 || s.epsilon.index >= static_cast<int>(h3->generators().size()))
      throw SpecError("epsilon generator index out of range (H^3 is " + h3->group().describe() + ")");
    eps = h3->generators()[static_cast<size_t>(s.epsilon.index)];
  } else if (s.epsilon.kind == EpsilonInput::Kind::Cocycle) {
    for (const auto& [t, v] : s.epsilon.values) {
      for (int x : t)
        if (x < 1 || x >= n) throw SpecError("epsilon values are given on nonidentity elements");
      const long long idx = sp.tuple_index({t[0], t[1], t[2]});
      for (int c = 0; c < s.rank; ++c) eps(static_cast<Eigen::Index>(idx * s.rank + c)) = v[static_cast<size_t>(c)];
    }
  }
  try {
    ToralGroupSpec spec = ToralGroupSpec::make(s.name, rep, eps);
    for (const auto& f : s.catalog.families) {
      for (const auto& col : f.generators)
        if (static_cast<int>(col.size()) != s.rank) throw SpecError("family " + f.name + ": annihilator generator length");
      for (int e : f.image)
        if (e < 0 || e >= n) throw SpecError("family " + f.name + ": image element out of range");
      spec.image(f.image);
    }
    return spec;
  } catch (const AtlasError& e) {
    throw SpecError(e.what());
  }
}

std::vector<std::string> builtin_names() {
  return {"circle", "o2", "pin2", "u2norm", "c3rot", "t2swap-lf", "point2"};
}

std::string builtin_text(const std::string& name) {
  static const std::map<std::string, std::string> texts{
      {"circle", R"(name circle
rank 1
group cyclic 1
epsilon zero
family SO2
family C n
  ann n
limit C n SO2
)"},
      {"o2", R"(name o2
rank 1
group cyclic 2
rho -1
epsilon zero
threshold 2
family O2
family D n
  ann n
family SO2
  image 0
family C n
  image 0
  ann n
limit D n O2
limit C n SO2
fusion 2 D(1) C(2)
)"},
      {"pin2", R"(name pin2
rank 1
group cyclic 2
rho -1
epsilon generator 0
family Pin2
family Q b
  ann 2*b
  lift 1 1 : b
family U1
  image 0
family C n
  image 0
  ann n
limit Q b Pin2
limit C n U1
)"},
      {"u2norm", R"(name u2norm
rank 2
group cyclic 2
rho 0 1 1 0
epsilon zero
family H
family K k
  ann k -k
family E0 j
  ann j j
family E1 j
  ann j j
  lift 1 1 : 1
family F0 j k
  ann j j
  ann k -k
family F1 j k
  ann j j
  ann k -k
  lift 1 1 : 1 0
family P j k
  constraint j-k mod 2
  ann j j
  ann k -k
  ann (j+k)/2 (j-k)/2
limit K k H
limit E0 j H
limit E1 j H
limit F0 j K
limit F1 j K
limit P j K
limit F0 k E0
limit F1 k E1
limit P k E0
)"},
      {"c3rot", R"(name c3rot
rank 2
group cyclic 3
rho 0 -1 1 -1
epsilon zero
family H
family R n
  ann n 0
  ann 0 n
family Rp n
  ann n n
  ann 0 3*n
limit R n H
limit Rp n H
)"},
      {"t2swap-lf", R"(name t2swap-lf
rank 2
group cyclic 2
rho 0 1 1 0
epsilon zero
family H
family K k
  ann k -k
limit K k H
)"},
      {"point2", R"(name point2
rank 0
group cyclic 2
rho
epsilon zero
family W
family One
  image 0
)"},
  };
  auto it = texts.find(name);
  if (it == texts.end()) throw SpecError("unknown built-in spec '" + name + "'");
  return it->second;
}

SpecFile load_spec(const std::string& name_or_path) {
  for (const auto& n : builtin_names())
    if (n == name_or_path) return parse_spec(builtin_text(n));
  std::ifstream in(name_or_path);
  if (!in) throw SpecError("no built-in spec or readable file named '" + name_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace toral
