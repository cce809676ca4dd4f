#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symex/ontology.hpp"

namespace symex {

struct Post {
  std::string id;
  std::string text;  // patient-written condition description, UTF-8
};

// The five attribute categories, in report order.
enum class AttributeType { kLocation = 0, kDescription, kTime, kFrequency, kAction };
inline constexpr int kNumAttributeTypes = 5;

const char* to_string(AttributeType t);
AttributeType attribute_type_from_string(const std::string& s);
const std::array<AttributeType, kNumAttributeTypes>& all_attribute_types();

// Code-point range [start, end) into a post text.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  auto operator<=>(const CharSpan&) const = default;
  std::size_t length() const { return end - start; }
};

struct SymptomAnnotation {
  std::string symptom_id;
  std::vector<CharSpan> evidence;  // may be empty for implied parents
};

struct AttributeAnnotation {
  std::string symptom_id;
  AttributeType type = AttributeType::kLocation;
  CharSpan span;
};

struct AnnotatedPost {
  Post post;
  std::vector<SymptomAnnotation> symptoms;
  std::vector<AttributeAnnotation> attributes;
  bool double_labeled_correct = false;

  std::set<std::string> gold_symptom_ids() const;
};

enum class Split { kTrain, kValidation, kTest };
const char* to_string(Split s);
Split split_from_string(const std::string& s);

struct Corpus {
  std::vector<AnnotatedPost> posts;
  std::map<std::string, Split> split;  // empty before split_corpus / load_splits
  std::map<std::string, std::vector<std::string>> augmentation_pool;

  const AnnotatedPost* find(const std::string& post_id) const;
  std::vector<const AnnotatedPost*> posts_in(Split s) const;
};

struct MergeConflict {
  std::string post_id;
  std::string kind;  // "symptom" | "evidence" | "attribute"
  std::string symptom_id;
  std::string side;  // "a" | "b"
  std::string detail;
};

// Validates all AnnotatedPost invariants; span bounds are checked against the
// text, symptom ids against the ontology when one is given.
void validate_post(const AnnotatedPost& p, const SymptomOntology* ontology);

Corpus parse_corpus_jsonl(const std::string& text, const SymptomOntology* ontology = nullptr);
Corpus load_corpus(const std::string& path, const SymptomOntology* ontology = nullptr);
// Canonical ordering: annotations sorted, fixed key order, one record per line.
std::string corpus_to_jsonl(const Corpus& c);
void save_corpus(const Corpus& c, const std::string& path);
std::string conflicts_to_jsonl(const std::vector<MergeConflict>& conflicts);

// Keeps annotations identical in both labelings; disagreements become conflict
// records and the merged post stays double_labeled_correct=false.
std::pair<AnnotatedPost, std::vector<MergeConflict>> merge_double_labels(const AnnotatedPost& a,
                                                                         const AnnotatedPost& b);

// Test = round(20% of double-labeled-correct posts); validation = round(10% of
// the remainder); rest is train. Post-granular and deterministic per seed.
void split_corpus(Corpus& corpus, std::uint64_t seed);
std::string splits_to_json(const Corpus& c);
void save_splits(const Corpus& c, const std::string& path);
void load_splits(Corpus& c, const std::string& path);

// Verbatim evidence segments from train-split posts, per symptom, deduplicated.
std::map<std::string, std::vector<std::string>> augment_descriptions(const Corpus& corpus,
                                                                     const SymptomOntology& ontology);

struct AttributeTypeStats {
  std::size_t total = 0;
  std::size_t unique_corpus_wide = 0;
  std::size_t unique_per_post = 0;
  double mean_length = 0.0;  // whitespace tokens
  double std_dev_length = 0.0;
};

struct CorpusStats {
  std::size_t posts = 0;
  std::size_t symptom_annotations = 0;
  std::size_t attribute_annotations = 0;
  std::map<AttributeType, AttributeTypeStats> per_type;
};

CorpusStats corpus_stats(const Corpus& corpus);
std::string stats_to_json(const CorpusStats& s);
std::string stats_to_table(const CorpusStats& s);

}  // namespace symex
