#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace picklab::cli {

struct SchemaIssue {
    std::string path;  // JSON pointer into the instance
    std::string message;
};

// Validates against the subset of JSON Schema used by the shipped schemas:
// type, enum, const, properties, required, additionalProperties, items,
// minItems, maxItems, minimum, maximum, anyOf, oneOf, allOf and local $ref.
std::optional<SchemaIssue> validate(const nlohmann::json& instance, const nlohmann::json& schema,
                                    const std::string& ref = "");

// Shipped schemas, embedded at build time. Throws std::out_of_range for unknown names.
const nlohmann::json& embedded_schema(const std::string& name);

}  // namespace picklab::cli
