// Copyright 2026 The coronaner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generic entity annotation: spans imported from an external OntoNotes
// tagger, optionally retyped through a knowledge-base class lookup.
//
// Generic span JSONL, one record per sentence:
//
//   {"sent_id": "d1:0",
//    "spans": [{"start": 0, "end": 2, "type": "ORG", "score": 0.99}]}
//
// Refinement rule TSV, '#' comments skipped:
//
//   kb_class <TAB> target_type <TAB> priority
//
// A larger priority wins when several rules match.

#ifndef CORONANER_GENERIC_ANNOTATION_H_
#define CORONANER_GENERIC_ANNOTATION_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "coronaner/entity_types.h"
#include "coronaner/span.h"
#include "coronaner/sparql.h"
#include "coronaner/text.h"

namespace coronaner {

struct GenericImport {
  SentenceSpans spans;  // aligned with the sentence list, sorted by start
  size_t records = 0;
  size_t imported = 0;
  size_t skipped_unknown_sentence = 0;
  size_t skipped_out_of_bounds = 0;
};

// Reads generic spans for `sentences`. Unknown sent_ids and out-of-bounds
// spans are errors unless `lenient`, in which case they are skipped and
// counted. Types must be GENERIC-kind registry types in every mode.
GenericImport LoadGenericSpans(
    const std::string &path, const std::vector<Sentence> &sentences,
    bool lenient = false,
    const TypeRegistry &registry = TypeRegistry::Default());
GenericImport LoadGenericSpans(
    std::istream &in, const std::string &name,
    const std::vector<Sentence> &sentences, bool lenient = false,
    const TypeRegistry &registry = TypeRegistry::Default());

struct RefinementRule {
  std::string kb_class;
  std::string target_type;
  int priority = 0;

  bool operator==(const RefinementRule &other) const = default;
};

// Throws ConfigError unless every target is GENERIC-kind and priorities
// are unique.
void ValidateRefinementRules(
    const std::vector<RefinementRule> &rules,
    const TypeRegistry &registry = TypeRegistry::Default());

std::vector<RefinementRule> LoadRefinementRules(
    const std::string &path,
    const TypeRegistry &registry = TypeRegistry::Default());

struct KbItem {
  std::string id;
  std::vector<std::string> classes;  // sorted, unique
};

class KnowledgeBase {
 public:
  virtual ~KnowledgeBase() = default;

  // Items whose label or alias equals `label` (the normalized surface;
  // `surface` is the form as written). Empty when nothing matches.
  virtual std::vector<KbItem> Lookup(const std::string &label,
                                     const std::string &surface) = 0;
};

// SPARQL-backed lookup. The query template may contain {label} (normalized
// surface) and {surface} (surface as written); both are substituted as
// escaped string literal content. Result rows bind ?item and ?class, and
// optionally ?label, which is then required to normalize to the lookup key.
class SparqlKnowledgeBase : public KnowledgeBase {
 public:
  SparqlKnowledgeBase(std::shared_ptr<SparqlClient> client,
                      std::string query_template = DefaultQueryTemplate());

  std::vector<KbItem> Lookup(const std::string &label,
                             const std::string &surface) override;

  static std::string DefaultQueryTemplate();

 private:
  std::shared_ptr<SparqlClient> client_;
  std::string query_template_;
};

// One refinement outcome, logged for every span considered.
struct RefinementDecision {
  std::string sent_id;
  size_t start = 0;
  size_t end = 0;
  std::string surface;  // normalized lookup key
  std::string item;     // matched item id, or "MISS"
  std::string old_type;
  std::string new_type;
};

// Retypes a MODEL span when the knowledge base knows its surface and one of
// the item classes has a rule; otherwise returns the span unchanged.
// Boundaries are never changed.
EntitySpan RefineSpan(const EntitySpan &span, const Sentence &sentence,
                      KnowledgeBase &kb,
                      const std::vector<RefinementRule> &rules,
                      RefinementDecision *decision = nullptr);

struct GenericAnnotation {
  GenericImport import;
  SentenceSpans spans;
  std::vector<RefinementDecision> decisions;
  size_t retyped = 0;
};

// LoadGenericSpans followed by RefineSpan on every span. With no rules the
// knowledge base is never consulted and `kb` may be null.
GenericAnnotation AnnotateGeneric(
    const std::vector<Sentence> &sentences, const std::string &spans_path,
    KnowledgeBase *kb, const std::vector<RefinementRule> &rules,
    bool lenient = false, int workers = 1,
    const TypeRegistry &registry = TypeRegistry::Default());

// Refinement stage alone, for spans already imported.
GenericAnnotation RefineGeneric(const std::vector<Sentence> &sentences,
                                GenericImport import, KnowledgeBase *kb,
                                const std::vector<RefinementRule> &rules,
                                int workers = 1);

}  // namespace coronaner

#endif  // CORONANER_GENERIC_ANNOTATION_H_
