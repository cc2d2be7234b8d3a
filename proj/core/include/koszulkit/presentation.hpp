#pragma once

#include <map>
#include <string>
#include <vector>

#include "koszulkit/graded_algebra.hpp"
#include "koszulkit/ncalg.hpp"

namespace kk::alg {

/// An element of a single piece of a graded algebra.
struct Element {
  int piece = -1;  ///< -1 for zero
  la::SparseVec coords;

  bool is_zero() const noexcept { return piece < 0 || coords.empty(); }
};

struct Generator {
  std::string name;
  int degree = 0;  ///< first grade coordinate
  Element value;
};

/// Per degree d <= d_max (index d), lifts of a basis of m_d / (m*m)_d.
/// Requires a single grading. Throws std::out_of_range beyond the trusted bound.
std::vector<std::vector<Generator>> minimal_generators(const GradedAlgebra& a, int d_max);

/// Value of a word in the generators; zero when some partial product vanishes
/// or lands outside the stored pieces.
Element evaluate_word(const GradedAlgebra& a, const std::vector<Generator>& gens, const nc::Word& w);

/// Value of a homogeneous polynomial, split by piece.
std::map<int, la::SparseVec> evaluate(const GradedAlgebra& a, const std::vector<Generator>& gens, const nc::NCPolynomial& p);

struct NCPresentation {
  std::vector<Generator> generators;
  nc::VariableOrder order;
  /// Minimal relations: each is monic, its leading word is the largest word
  /// present, and no relation contains another relation's leading word
  /// within the same degree.
  std::vector<nc::NCPolynomial> relations;
  int d_max = 0;

  std::vector<std::string> names() const;
};

/// Generators (default: minimal_generators in degree order) and a minimal set
/// of relations of degree <= d_max: the kernel of the free algebra on the
/// generators, modulo the ideal generated by lower-degree relations.
NCPresentation present(const GradedAlgebra& a, int d_max);
NCPresentation present(const GradedAlgebra& a, std::vector<Generator> gens, nc::VariableOrder order, int d_max);

/// dim of the quotient of the free algebra by (relations) in each degree
/// 0..d_max, computed by linear algebra on words.
std::vector<long long> quotient_dims(const la::Field& f, const nc::VariableOrder& order,
                                     const std::vector<nc::NCPolynomial>& relations, int d_max);

}  // namespace kk::alg
