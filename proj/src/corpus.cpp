#include "symex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlohmann/json.hpp"
#include "symex/common.hpp"

namespace symex {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::array<AttributeType, kNumAttributeTypes> kAllTypes = {
    AttributeType::kLocation, AttributeType::kDescription, AttributeType::kTime,
    AttributeType::kFrequency, AttributeType::kAction};

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

const char* to_string(AttributeType t) {
  switch (t) {
    case AttributeType::kLocation: return "location";
    case AttributeType::kDescription: return "description";
    case AttributeType::kTime: return "time";
    case AttributeType::kFrequency: return "frequency";
    case AttributeType::kAction: return "action";
  }
  return "?";
}

AttributeType attribute_type_from_string(const std::string& s) {
  for (AttributeType t : kAllTypes) {
    if (s == to_string(t)) return t;
  }
  throw ValidationError("unknown attribute type '" + s + "'");
}

const std::array<AttributeType, kNumAttributeTypes>& all_attribute_types() { return kAllTypes; }

const char* to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "?";
}

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "validation") return Split::kValidation;
  if (s == "test") return Split::kTest;
  throw ValidationError("unknown split '" + s + "'");
}

std::set<std::string> AnnotatedPost::gold_symptom_ids() const {
  std::set<std::string> out;
  for (const auto& s : symptoms) out.insert(s.symptom_id);
  return out;
}

const AnnotatedPost* Corpus::find(const std::string& post_id) const {
  for (const auto& p : posts) {
    if (p.post.id == post_id) return &p;
  }
  return nullptr;
}

std::vector<const AnnotatedPost*> Corpus::posts_in(Split s) const {
  std::vector<const AnnotatedPost*> out;
  for (const auto& p : posts) {
    auto it = split.find(p.post.id);
    if (it != split.end() && it->second == s) out.push_back(&p);
  }
  return out;
}

void validate_post(const AnnotatedPost& p, const SymptomOntology* ontology) {
  if (p.post.id.empty()) throw ValidationError("post with empty id");
  if (p.post.text.empty()) throw ValidationError("post '" + p.post.id + "' has empty text");
  if (!utf8_valid(p.post.text)) throw ValidationError("post '" + p.post.id + "' is not valid UTF-8");
  const std::size_t len = utf8_length(p.post.text);

  auto check_span = [&](const CharSpan& s, const char* what) {
    if (s.start >= s.end || s.end > len) {
      throw ValidationError("post '" + p.post.id + "': " + what + " span [" +
                            std::to_string(s.start) + "," + std::to_string(s.end) +
                            ") out of range (text length " + std::to_string(len) + ")");
    }
  };

  std::set<std::string> seen;
  for (const auto& s : p.symptoms) {
    if (!seen.insert(s.symptom_id).second) {
      throw ValidationError("post '" + p.post.id + "': duplicate symptom annotation '" +
                            s.symptom_id + "'");
    }
    if (ontology && !ontology->contains(s.symptom_id)) {
      throw ValidationError("post '" + p.post.id + "': unknown symptom id '" + s.symptom_id + "'");
    }
    for (const auto& e : s.evidence) check_span(e, "evidence");
  }
  for (const auto& a : p.attributes) {
    if (!seen.count(a.symptom_id)) {
      throw ValidationError("post '" + p.post.id + "': attribute refers to unannotated symptom '" +
                            a.symptom_id + "'");
    }
    check_span(a.span, "attribute");
  }
}

namespace {

AnnotatedPost post_from_json(const ordered_json& j) {
  AnnotatedPost p;
  try {
    p.post.id = j.at("id").get<std::string>();
    p.post.text = j.at("text").get<std::string>();
    if (j.contains("symptoms")) {
      for (const auto& s : j.at("symptoms")) {
        SymptomAnnotation ann;
        ann.symptom_id = s.at("symptom_id").get<std::string>();
        if (s.contains("evidence")) {
          for (const auto& e : s.at("evidence")) {
            ann.evidence.push_back({e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>()});
          }
        }
        p.symptoms.push_back(std::move(ann));
      }
    }
    if (j.contains("attributes")) {
      for (const auto& a : j.at("attributes")) {
        AttributeAnnotation ann;
        ann.symptom_id = a.at("symptom_id").get<std::string>();
        ann.type = attribute_type_from_string(a.at("type").get<std::string>());
        ann.span = {a.at("start").get<std::size_t>(), a.at("end").get<std::size_t>()};
        p.attributes.push_back(ann);
      }
    }
    p.double_labeled_correct = j.value("double_labeled_correct", false);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed corpus record: ") + e.what());
  }
  return p;
}

ordered_json post_to_json(const AnnotatedPost& p) {
  ordered_json j;
  j["id"] = p.post.id;
  j["text"] = p.post.text;
  auto symptoms = p.symptoms;
  std::sort(symptoms.begin(), symptoms.end(),
            [](const auto& a, const auto& b) { return a.symptom_id < b.symptom_id; });
  j["symptoms"] = ordered_json::array();
  for (auto s : symptoms) {
    std::sort(s.evidence.begin(), s.evidence.end());
    ordered_json js;
    js["symptom_id"] = s.symptom_id;
    js["evidence"] = ordered_json::array();
    for (const auto& e : s.evidence) {
      js["evidence"].push_back({{"start", e.start}, {"end", e.end}});
    }
    j["symptoms"].push_back(std::move(js));
  }
  auto attributes = p.attributes;
  std::sort(attributes.begin(), attributes.end(), [](const auto& a, const auto& b) {
    return std::tie(a.symptom_id, a.type, a.span) < std::tie(b.symptom_id, b.type, b.span);
  });
  j["attributes"] = ordered_json::array();
  for (const auto& a : attributes) {
    j["attributes"].push_back({{"symptom_id", a.symptom_id},
                               {"type", to_string(a.type)},
                               {"start", a.span.start},
                               {"end", a.span.end}});
  }
  j["double_labeled_correct"] = p.double_labeled_correct;
  return j;
}

}  // namespace

Corpus parse_corpus_jsonl(const std::string& text, const SymptomOntology* ontology) {
  Corpus c;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    AnnotatedPost p = post_from_json(j);
    validate_post(p, ontology);
    if (!ids.insert(p.post.id).second) {
      throw ValidationError("corpus: duplicate post id '" + p.post.id + "'");
    }
    c.posts.push_back(std::move(p));
  }
  return c;
}

Corpus load_corpus(const std::string& path, const SymptomOntology* ontology) {
  return parse_corpus_jsonl(read_text_file(path), ontology);
}

std::string corpus_to_jsonl(const Corpus& c) {
  std::string out;
  for (const auto& p : c.posts) {
    out += post_to_json(p).dump();
    out += '\n';
  }
  return out;
}

void save_corpus(const Corpus& c, const std::string& path) {
  write_text_file(path, corpus_to_jsonl(c));
}

std::string conflicts_to_jsonl(const std::vector<MergeConflict>& conflicts) {
  std::string out;
  for (const auto& k : conflicts) {
    ordered_json j;
    j["post_id"] = k.post_id;
    j["kind"] = k.kind;
    j["symptom_id"] = k.symptom_id;
    j["side"] = k.side;
    j["detail"] = k.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::pair<AnnotatedPost, std::vector<MergeConflict>> merge_double_labels(const AnnotatedPost& a,
                                                                         const AnnotatedPost& b) {
  if (a.post.id != b.post.id || a.post.text != b.post.text) {
    throw ValidationError("merge_double_labels: labelings refer to different posts ('" +
                          a.post.id + "' vs '" + b.post.id + "')");
  }
  AnnotatedPost merged;
  merged.post = a.post;
  std::vector<MergeConflict> conflicts;

  auto span_str = [](const CharSpan& s) {
    return "[" + std::to_string(s.start) + "," + std::to_string(s.end) + ")";
  };

  std::map<std::string, const SymptomAnnotation*> in_a, in_b;
  for (const auto& s : a.symptoms) in_a[s.symptom_id] = &s;
  for (const auto& s : b.symptoms) in_b[s.symptom_id] = &s;

  for (const auto& [id, sa] : in_a) {
    auto it = in_b.find(id);
    if (it == in_b.end()) {
      conflicts.push_back({a.post.id, "symptom", id, "a", "symptom only in one labeling"});
      continue;
    }
    const SymptomAnnotation* sb = it->second;
    SymptomAnnotation kept;
    kept.symptom_id = id;
    std::set<CharSpan> ea(sa->evidence.begin(), sa->evidence.end());
    std::set<CharSpan> eb(sb->evidence.begin(), sb->evidence.end());
    for (const auto& e : ea) {
      if (eb.count(e)) {
        kept.evidence.push_back(e);
      } else {
        conflicts.push_back({a.post.id, "evidence", id, "a", "evidence " + span_str(e) + " only in one labeling"});
      }
    }
    for (const auto& e : eb) {
      if (!ea.count(e)) {
        conflicts.push_back({a.post.id, "evidence", id, "b", "evidence " + span_str(e) + " only in one labeling"});
      }
    }
    merged.symptoms.push_back(std::move(kept));
  }
  for (const auto& [id, _] : in_b) {
    if (!in_a.count(id)) {
      conflicts.push_back({a.post.id, "symptom", id, "b", "symptom only in one labeling"});
    }
  }

  auto attr_key = [](const AttributeAnnotation& x) {
    return std::tuple(x.symptom_id, x.type, x.span);
  };
  std::set<std::tuple<std::string, AttributeType, CharSpan>> aa, ab;
  for (const auto& x : a.attributes) aa.insert(attr_key(x));
  for (const auto& x : b.attributes) ab.insert(attr_key(x));
  auto kept_symptoms = merged.gold_symptom_ids();
  for (const auto& x : a.attributes) {
    if (ab.count(attr_key(x))) {
      if (kept_symptoms.count(x.symptom_id)) merged.attributes.push_back(x);
    } else {
      conflicts.push_back({a.post.id, "attribute", x.symptom_id, "a",
                           std::string(to_string(x.type)) + " " + span_str(x.span) + " only in one labeling"});
    }
  }
  for (const auto& x : b.attributes) {
    if (!aa.count(attr_key(x))) {
      conflicts.push_back({a.post.id, "attribute", x.symptom_id, "b",
                           std::string(to_string(x.type)) + " " + span_str(x.span) + " only in one labeling"});
    }
  }

  // canonical order so merge(a,b) and merge(b,a) agree up to conflict sides
  std::sort(merged.attributes.begin(), merged.attributes.end(), [](const auto& x, const auto& y) {
    return std::tie(x.symptom_id, x.type, x.span) < std::tie(y.symptom_id, y.type, y.span);
  });
  merged.double_labeled_correct = conflicts.empty();
  return {std::move(merged), std::move(conflicts)};
}

void split_corpus(Corpus& corpus, std::uint64_t seed) {
  std::vector<std::string> correct, rest;
  for (const auto& p : corpus.posts) {
    (p.double_labeled_correct ? correct : rest).push_back(p.post.id);
  }
  if (correct.empty()) {
    throw ValidationError("split_corpus: no double-labeled-correct posts available for the test set");
  }
  std::sort(correct.begin(), correct.end());
  std::sort(rest.begin(), rest.end());

  Rng rng(seed);
  rng.shuffle(correct);
  const std::size_t n_test = static_cast<std::size_t>(std::llround(0.20 * static_cast<double>(correct.size())));

  corpus.split.clear();
  for (std::size_t i = 0; i < n_test; ++i) corpus.split[correct[i]] = Split::kTest;

  std::vector<std::string> remainder(correct.begin() + static_cast<std::ptrdiff_t>(n_test), correct.end());
  remainder.insert(remainder.end(), rest.begin(), rest.end());
  std::sort(remainder.begin(), remainder.end());
  rng.shuffle(remainder);
  const std::size_t n_val = static_cast<std::size_t>(std::llround(0.10 * static_cast<double>(remainder.size())));
  for (std::size_t i = 0; i < remainder.size(); ++i) {
    corpus.split[remainder[i]] = i < n_val ? Split::kValidation : Split::kTrain;
  }
}

std::string splits_to_json(const Corpus& c) {
  ordered_json j;
  for (const auto& [id, s] : c.split) j[id] = to_string(s);
  return j.dump(2) + "\n";
}

void save_splits(const Corpus& c, const std::string& path) {
  write_text_file(path, splits_to_json(c));
}

void load_splits(Corpus& c, const std::string& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("splits file: ") + e.what());
  }
  c.split.clear();
  for (const auto& [id, s] : j.items()) {
    if (!c.find(id)) throw ValidationError("splits file refers to unknown post '" + id + "'");
    c.split[id] = split_from_string(s.get<std::string>());
  }
}

std::map<std::string, std::vector<std::string>> augment_descriptions(const Corpus& corpus,
                                                                     const SymptomOntology& ontology) {
  std::map<std::string, std::vector<std::string>> pool;
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& p : corpus.posts) {
    auto it = corpus.split.find(p.post.id);
    if (it == corpus.split.end() || it->second != Split::kTrain) continue;  // leakage guard
    for (const auto& s : p.symptoms) {
      if (!ontology.contains(s.symptom_id)) {
        throw ValidationError("augment_descriptions: unknown symptom '" + s.symptom_id + "'");
      }
      for (const auto& e : s.evidence) {
        std::string segment = utf8_substr(p.post.text, e.start, e.end);
        if (seen[s.symptom_id].insert(segment).second) {
          pool[s.symptom_id].push_back(std::move(segment));
        }
      }
    }
  }
  return pool;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats st;
  st.posts = corpus.posts.size();
  std::map<AttributeType, std::vector<double>> lengths;
  std::map<AttributeType, std::set<std::string>> unique_corpus;
  std::map<AttributeType, std::size_t> unique_per_post;
  for (const auto& p : corpus.posts) {
    st.symptom_annotations += p.symptoms.size();
    std::map<AttributeType, std::set<std::string>> per_post;
    for (const auto& a : p.attributes) {
      const std::string surface = utf8_substr(p.post.text, a.span.start, a.span.end);
      lengths[a.type].push_back(static_cast<double>(whitespace_tokens(surface).size()));
      unique_corpus[a.type].insert(surface);
      per_post[a.type].insert(surface);
      ++st.attribute_annotations;
    }
    for (const auto& [t, s] : per_post) unique_per_post[t] += s.size();
  }
  for (AttributeType t : all_attribute_types()) {
    AttributeTypeStats ts;
    const auto& ls = lengths[t];
    ts.total = ls.size();
    ts.unique_corpus_wide = unique_corpus[t].size();
    ts.unique_per_post = unique_per_post[t];
    if (!ls.empty()) {
      double sum = 0;
      for (double x : ls) sum += x;
      ts.mean_length = sum / static_cast<double>(ls.size());
      double var = 0;
      for (double x : ls) var += (x - ts.mean_length) * (x - ts.mean_length);
      ts.std_dev_length = std::sqrt(var / static_cast<double>(ls.size()));
    }
    st.per_type[t] = ts;
  }
  return st;
}

std::string stats_to_json(const CorpusStats& s) {
  ordered_json j;
  j["posts"] = s.posts;
  j["symptom_annotations"] = s.symptom_annotations;
  j["attribute_annotations"] = s.attribute_annotations;
  j["attributes"] = ordered_json::object();
  for (const auto& [t, ts] : s.per_type) {
    ordered_json r;
    r["total_occurrences"] = ts.total;
    r["unique_occurrences"] = ts.unique_corpus_wide;
    r["unique_occurrences_per_post"] = ts.unique_per_post;
    r["mean_attribute_length"] = ts.mean_length;
    r["attribute_length_std_dev"] = ts.std_dev_length;
    j["attributes"][to_string(t)] = std::move(r);
  }
  return j.dump(2) + "\n";
}

std::string stats_to_table(const CorpusStats& s) {
  char buf[160];
  std::string out;
  out += "posts: " + std::to_string(s.posts) +
         "  symptom annotations: " + std::to_string(s.symptom_annotations) +
         "  attribute annotations: " + std::to_string(s.attribute_annotations) + "\n\n";
  std::snprintf(buf, sizeof(buf), "%-12s %18s %18s %22s %24s\n", "", "Total Occurrences",
                "Unique Occurrences", "Mean Attribute Length", "Attribute Length Std Dev");
  out += buf;
  // rows sorted by total, most frequent first
  std::vector<std::pair<AttributeType, AttributeTypeStats>> rows(s.per_type.begin(), s.per_type.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.second.total > b.second.total; });
  for (const auto& [t, ts] : rows) {
    std::snprintf(buf, sizeof(buf), "%-12s %18zu %18zu %22.2f %24.2f\n", to_string(t), ts.total,
                  ts.unique_corpus_wide, ts.mean_length, ts.std_dev_length);
    out += buf;
  }
  return out;
}

}  // namespace symex
