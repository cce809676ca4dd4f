#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symex/common.hpp"
#include "symex/corpus.hpp"
#include "symex/ontology.hpp"

namespace symex {

struct ClassificationExample {
  std::string post_id;
  std::string symptom_id;
  std::string description_text;  // canonical description or an augmented pool entry
  int label = 0;
  double difficulty = 0.0;  // min tree distance to the post's gold closure
};

struct CurriculumStage {
  int index = 0;
  std::size_t min_distance = 1;  // minimum hierarchy distance for sampled negatives
};

struct CurriculumConfig {
  // strictly decreasing, last stage 1 (siblings allowed, hardest)
  std::vector<std::size_t> stage_distances = {4, 3, 2, 1};
  void validate() const;
};

// One positive per symptom in the label closure of the post's gold symptoms
// (canonical description); augmented adds one example per pool entry.
// closure_positives=false restricts to the annotated symptoms (ablation).
std::vector<ClassificationExample> positives_for_post(
    const AnnotatedPost& post, const SymptomOntology& ontology,
    const std::map<std::string, std::vector<std::string>>& pool, bool use_augmented,
    bool closure_positives = true);

// Draws `count` negatives outside the gold closure with hierarchy distance to
// the closure >= stage.min_distance; if no symptom satisfies the stage, the
// constraint relaxes to the largest satisfiable distance. Uniform, seeded,
// with replacement.
std::vector<ClassificationExample> sample_negatives(const AnnotatedPost& post,
                                                    const SymptomOntology& ontology,
                                                    std::size_t count,
                                                    const CurriculumStage& stage, Rng& rng);

// Equal-width epoch bands over the configured stages.
CurriculumStage curriculum_schedule(std::size_t epoch, std::size_t total_epochs,
                                    const CurriculumConfig& config);

}  // namespace symex
