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

#ifndef CORONANER_ENTITY_TYPES_H_
#define CORONANER_ENTITY_TYPES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coronaner {

// HEALTH types come from the seed lexicons and take priority during
// harmonization; GENERIC types are the OntoNotes categories.
enum class EntityKind { kHealth, kGeneric };

struct EntityType {
  std::string name;  // canonical upper-case
  EntityKind kind;

  bool operator==(const EntityType &other) const = default;
};

// Set of known entity types. Names are unique ignoring case.
class TypeRegistry {
 public:
  TypeRegistry() = default;

  // The 23-type default: 18 OntoNotes types plus CORONAVIRUS,
  // DISEASE_OR_SYNDROME, SIGN_OR_SYMPTOM, IMMUNE_RESPONSE and GROUP.
  static const TypeRegistry &Default();

  // Throws ConfigError if the name is empty or already registered.
  void Add(std::string_view name, EntityKind kind);

  // Case-insensitive lookup.
  std::optional<EntityType> Find(std::string_view name) const;

  // Like Find, but throws ConfigError("unknown entity type X (valid: ...)").
  const EntityType &Get(std::string_view name) const;

  bool Contains(std::string_view name) const { return Find(name).has_value(); }

  std::vector<std::string> Names() const;
  std::vector<std::string> Names(EntityKind kind) const;

  const std::vector<EntityType> &types() const { return types_; }
  size_t size() const { return types_.size(); }

 private:
  const EntityType *Lookup(std::string_view name) const;

  std::vector<EntityType> types_;
};

}  // namespace coronaner

#endif  // CORONANER_ENTITY_TYPES_H_
