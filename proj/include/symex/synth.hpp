#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "symex/corpus.hpp"
#include "symex/ontology.hpp"

namespace symex {

struct SynthOptions {
  std::size_t size = 100;
  std::uint64_t seed = 0;
  double double_labeled_fraction = 0.6;
  // Leaf symptoms never mentioned in generated posts; lets experiments create
  // symptoms with train frequency zero.
  std::set<std::string> exclude_symptoms;
};

// Surface phrases a post may use for a symptom, derived from the layman
// description ("oder"/comma alternatives are separate variants).
std::vector<std::string> surface_variants(const SymptomNode& node);

// Deterministic template-based posts with exact gold character spans.
Corpus generate_synthetic_corpus(const SymptomOntology& ontology, const SynthOptions& opts);
Corpus generate_synthetic_corpus(const SymptomOntology& ontology, std::size_t size, std::uint64_t seed);

}  // namespace symex
