#include "symex/synth.hpp"

#include <algorithm>
#include <cmath>

#include "symex/common.hpp"

namespace symex {

namespace {

const std::vector<std::string> kGreetings = {
    "Hallo zusammen,", "Hallo,", "Guten Tag,", "Liebe Community,"};

const std::vector<std::string> kOpeners = {
    "Ich habe", "Seit einiger Zeit habe ich", "Außerdem habe ich", "Dazu kommt bei mir",
    "Zusätzlich habe ich", "Mich plagt", "Neuerdings bemerke ich"};

const std::vector<std::string> kDistractors = {
    "War deswegen schon zweimal beim Arzt.",
    "Die Blutwerte waren angeblich unauffällig.",
    "Ich mache mir langsam wirklich Sorgen.",
    "Mein Hausarzt konnte bisher nichts finden.",
    "Hat jemand von euch ähnliche Erfahrungen gemacht?",
    "Ich weiß einfach nicht mehr weiter.",
    "Im Urlaub war es kurzzeitig etwas besser.",
    "Tabletten haben bisher überhaupt nicht geholfen."};

const std::vector<std::string> kClosers = {
    "Vielen Dank für eure Hilfe.", "Danke schonmal für alle Antworten.",
    "Über jeden Tipp wäre ich dankbar."};

// Per-type phrase banks. Lengths are tuned so time and description dominate
// the counts and action has the longest surface forms (mean around five
// whitespace tokens).
const std::vector<std::string>& phrase_bank(AttributeType t) {
  static const std::vector<std::string> kLocation = {
      "im Oberbauch",       "auf der linken Seite", "neben dem Bauchnabel",
      "im ganzen Bauch",    "auf der rechten Seite", "im unteren Rücken",
      "hinter dem Brustbein"};
  static const std::vector<std::string> kDescription = {
      "stechend", "dumpf", "sehr stark", "brennend", "krampfartig",
      "unangenehm drückend", "ziemlich heftig"};
  static const std::vector<std::string> kTime = {
      "seit gestern",      "seit zwei Wochen",  "nach dem Essen", "in der Nacht",
      "am frühen Morgen",  "seit ein paar Tagen", "seit letztem Monat"};
  static const std::vector<std::string> kFrequency = {
      "ständig", "meistens", "immer wieder", "selten", "mehrmals täglich",
      "fast jeden Tag", "ab und zu"};
  static const std::vector<std::string> kAction = {
      "wenn man draufdrückt",
      "wenn ich mich nach vorne beuge",
      "nach dem Essen von fettigen Speisen",
      "wenn ich schnell Treppen steige",
      "sobald ich mich abends hinlege",
      "wenn ich lange am Schreibtisch sitze"};
  switch (t) {
    case AttributeType::kLocation: return kLocation;
    case AttributeType::kDescription: return kDescription;
    case AttributeType::kTime: return kTime;
    case AttributeType::kFrequency: return kFrequency;
    case AttributeType::kAction: return kAction;
  }
  return kLocation;
}

// Appendix-A-shaped type frequencies: time and description most frequent.
AttributeType sample_attribute_type(Rng& rng) {
  const double x = rng.uniform01();
  if (x < 0.318) return AttributeType::kTime;
  if (x < 0.594) return AttributeType::kDescription;
  if (x < 0.763) return AttributeType::kLocation;
  if (x < 0.888) return AttributeType::kFrequency;
  return AttributeType::kAction;
}

std::size_t sample_attribute_count(Rng& rng) {
  const double x = rng.uniform01();
  if (x < 0.10) return 0;
  if (x < 0.32) return 1;
  if (x < 0.62) return 2;
  if (x < 0.84) return 3;
  return 4;
}

struct PostBuilder {
  std::string text;
  std::size_t cp = 0;

  void append(const std::string& s) {
    text += s;
    cp += utf8_length(s);
  }
  CharSpan append_span(const std::string& s) {
    const std::size_t start = cp;
    append(s);
    return {start, cp};
  }
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(' ');
  std::size_t e = s.find_last_not_of(' ');
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> surface_variants(const SymptomNode& node) {
  std::vector<std::string> out;
  std::string rest = node.description;
  // split on " oder " first, then commas
  std::vector<std::string> parts;
  std::size_t pos;
  while ((pos = rest.find(" oder ")) != std::string::npos) {
    parts.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 6);
  }
  parts.push_back(rest);
  for (const auto& part : parts) {
    std::string r = part;
    while ((pos = r.find(',')) != std::string::npos) {
      std::string piece = trim(r.substr(0, pos));
      if (!piece.empty()) out.push_back(piece);
      r = r.substr(pos + 1);
    }
    std::string piece = trim(r);
    if (!piece.empty()) out.push_back(piece);
  }
  if (out.empty()) out.push_back(node.description);
  return out;
}

Corpus generate_synthetic_corpus(const SymptomOntology& ontology, const SynthOptions& opts) {
  if (opts.size < 1) throw ValidationError("generate_synthetic_corpus: size must be >= 1");
  std::vector<std::string> leaves;
  for (const auto& id : ontology.leaf_ids()) {
    if (!opts.exclude_symptoms.count(id)) leaves.push_back(id);
  }
  if (leaves.empty()) {
    throw ValidationError("generate_synthetic_corpus: no mentionable leaf symptoms");
  }

  Rng rng(opts.seed);
  Corpus corpus;

  for (std::size_t n = 0; n < opts.size; ++n) {
    AnnotatedPost ap;
    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "synth-%06zu", n);
    ap.post.id = idbuf;

    PostBuilder b;
    bool greeted = false;
    if (rng.bernoulli(0.6)) {
      b.append(kGreetings[rng.uniform_index(kGreetings.size())]);
      b.append(" ");
      greeted = true;
    }

    // 1-5 distinct leaf symptoms per post
    std::size_t want = 1 + sample_attribute_count(rng);  // same shape, 1..5
    want = std::min(want, leaves.size());
    std::vector<std::string> pool = leaves;
    rng.shuffle(pool);
    pool.resize(want);

    bool first_sentence = true;
    for (const auto& leaf : pool) {
      if (!first_sentence && rng.bernoulli(0.45)) {
        b.append(kDistractors[rng.uniform_index(kDistractors.size())]);
        b.append(" ");
      }

      const auto variants = surface_variants(ontology.node(leaf));
      const std::string& variant = variants[rng.uniform_index(variants.size())];

      // pick attributes for this symptom; first of each type goes into the
      // main sentence, repeats become follow-up sentences
      const std::size_t n_attr = sample_attribute_count(rng);
      std::array<std::string, kNumAttributeTypes> slot;
      std::vector<std::pair<AttributeType, std::string>> extras;
      for (std::size_t k = 0; k < n_attr; ++k) {
        const AttributeType t = sample_attribute_type(rng);
        const auto& bank = phrase_bank(t);
        const std::string& phrase = bank[rng.uniform_index(bank.size())];
        auto& s = slot[static_cast<std::size_t>(t)];
        if (s.empty()) {
          s = phrase;
        } else if (s != phrase) {
          extras.emplace_back(t, phrase);
        }
      }
      auto slot_of = [&](AttributeType t) -> const std::string& {
        return slot[static_cast<std::size_t>(t)];
      };

      std::string opener = kOpeners[rng.uniform_index(kOpeners.size())];
      if (first_sentence && greeted) opener[0] = static_cast<char>(std::tolower(opener[0]));
      b.append(opener);

      auto push_attr = [&](AttributeType t, const std::string& phrase) {
        ap.attributes.push_back({leaf, t, b.append_span(phrase)});
      };

      if (!slot_of(AttributeType::kTime).empty()) {
        b.append(" ");
        push_attr(AttributeType::kTime, slot_of(AttributeType::kTime));
      }
      if (!slot_of(AttributeType::kFrequency).empty()) {
        b.append(" ");
        push_attr(AttributeType::kFrequency, slot_of(AttributeType::kFrequency));
      }
      b.append(" ");
      SymptomAnnotation sym;
      sym.symptom_id = leaf;
      sym.evidence.push_back(b.append_span(variant));
      ap.symptoms.push_back(std::move(sym));
      if (!slot_of(AttributeType::kLocation).empty()) {
        b.append(" ");
        push_attr(AttributeType::kLocation, slot_of(AttributeType::kLocation));
      }
      if (!slot_of(AttributeType::kDescription).empty()) {
        b.append(", eher ");
        push_attr(AttributeType::kDescription, slot_of(AttributeType::kDescription));
      }
      if (!slot_of(AttributeType::kAction).empty()) {
        b.append(", besonders ");
        push_attr(AttributeType::kAction, slot_of(AttributeType::kAction));
      }
      b.append(". ");

      for (const auto& [t, phrase] : extras) {
        switch (t) {
          case AttributeType::kTime:
            b.append("Das ist vor allem ");
            push_attr(t, phrase);
            b.append(" so. ");
            break;
          case AttributeType::kFrequency:
            b.append("Es tritt ");
            push_attr(t, phrase);
            b.append(" auf. ");
            break;
          case AttributeType::kLocation:
            b.append("Manchmal spüre ich es auch ");
            push_attr(t, phrase);
            b.append(". ");
            break;
          case AttributeType::kDescription:
            b.append("Es fühlt sich ");
            push_attr(t, phrase);
            b.append(" an. ");
            break;
          case AttributeType::kAction:
            b.append("Schlimmer wird es ");
            push_attr(t, phrase);
            b.append(". ");
            break;
        }
      }
      first_sentence = false;
    }

    if (rng.bernoulli(0.7)) {
      b.append(kClosers[rng.uniform_index(kClosers.size())]);
    } else if (!b.text.empty() && b.text.back() == ' ') {
      b.text.pop_back();
    }

    ap.post.text = b.text;
    corpus.posts.push_back(std::move(ap));
  }

  // seeded 60% of posts marked double-labeled-correct
  std::vector<std::size_t> idx(corpus.posts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  rng.shuffle(idx);
  const auto n_correct = static_cast<std::size_t>(
      std::llround(opts.double_labeled_fraction * static_cast<double>(idx.size())));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    corpus.posts[idx[i]].double_labeled_correct = i < std::max<std::size_t>(n_correct, 1);
  }

  for (const auto& p : corpus.posts) validate_post(p, &ontology);
  return corpus;
}

Corpus generate_synthetic_corpus(const SymptomOntology& ontology, std::size_t size, std::uint64_t seed) {
  SynthOptions opts;
  opts.size = size;
  opts.seed = seed;
  return generate_synthetic_corpus(ontology, opts);
}

}  // namespace symex
