#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "gazlab/gazetteer.hpp"
#include "gazlab/matcher.hpp"
#include "gazlab/tagger.hpp"

namespace gazlab::testsupport {

// Gazetteer built straight from a lexeme list; ids follow list order.
Gazetteer make_gazetteer(const std::vector<std::u32string>& lexemes,
                         const std::string& name = "g", std::size_t dim = 8);

// Quadratic substring scan, the reference for the automaton. Same ordering
// contract: (start, end, lexeme_id).
std::vector<MatchSpan> naive_matches(std::u32string_view text,
                                     const std::vector<std::u32string>& lexemes,
                                     const MaskSet& mask = {});

// All labels^length tag sequences, in lexicographic label-index order.
std::vector<std::vector<std::string>> all_paths(const std::vector<std::string>& labels,
                                                std::size_t length);

// log-likelihood summed over paths must be a distribution: this returns
// sum_paths exp(ll(path)).
double path_probability_sum(const CrfModel& model,
                            const std::vector<TokenFeatures>& tokens);

// Highest ll over exhaustive enumeration.
double best_path_ll(const CrfModel& model, const std::vector<TokenFeatures>& tokens);

// Central finite differences on every weight of the regularized objective
// ll - lambda/2 |w|^2; returns the worst relative error against the
// analytic gradient.
double max_gradient_fd_error(const CrfModel& model,
                             const std::vector<TokenFeatures>& tokens,
                             const std::vector<std::string>& gold, double lambda,
                             double h = 1e-5);

struct RandomInstance {
  CrfModel model;
  std::vector<TokenFeatures> tokens;
  std::vector<std::string> gold;
};

// Small random CRF plus a random input: 2..max_labels labels, random weights
// in [-1, 1), 1..3 known features per token (unknown ones mixed in), random
// dense block when with_dense.
RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_len,
                               std::size_t max_labels, bool with_dense);

}  // namespace gazlab::testsupport
