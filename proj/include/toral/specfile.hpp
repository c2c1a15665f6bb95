#pragma once

#include "toral/blockatlas.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toral {

// Malformed or invalid input.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
// Input exceeds a documented cap.
class CapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupInput {
  enum class Kind { Cyclic, Permutations, Table };
  Kind kind = Kind::Cyclic;
  int order = 1;                       // cyclic
  int degree = 0;                      // permutations
  std::vector<std::vector<int>> rows;  // permutation generators or table rows
  bool operator==(const GroupInput&) const = default;
};

struct EpsilonInput {
  enum class Kind { Zero, Generator, Cocycle };
  Kind kind = Kind::Zero;
  int index = 0;
  std::vector<std::pair<std::array<int, 3>, std::vector<BigInt>>> values;  // nonidentity triples
  bool operator==(const EpsilonInput&) const = default;
};

struct SpecBounds {
  std::optional<BigInt> exponent;
  std::optional<BigInt> index;
  std::optional<int> grid;
  bool operator==(const SpecBounds&) const = default;
};

struct SpecFile {
  std::string name;
  int rank = 0;
  GroupInput group;
  std::vector<IntMatrix> rho;  // one per group generator
  EpsilonInput epsilon;
  SpecBounds bounds;
  Catalog catalog;
  bool operator==(const SpecFile& o) const;
};

constexpr long long kMaxIndexBound = 10000;

SpecFile parse_spec(const std::string& text);
std::string serialize(const SpecFile& spec);
std::shared_ptr<const FiniteGroup> build_group(const GroupInput& g);
IntegralRep build_rep(const SpecFile& spec);
ToralGroupSpec build_spec(const SpecFile& spec);

std::vector<std::string> builtin_names();
std::string builtin_text(const std::string& name);
// Built-in name or path to a spec file.
SpecFile load_spec(const std::string& name_or_path);

}  // namespace toral
