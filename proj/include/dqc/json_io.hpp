#pragma once

#include <string>

#include "dqc/circuit.hpp"

namespace dqc {

/// Canonical JSON form of a circuit (the only persistence format).
/// Schema: docs/circuit_schema.md. serialize(deserialize(serialize(c)))
/// is byte-identical to serialize(c).
std::string serialize(const Circuit& c);

/// Parses the JSON schema. Throws DqcError with a field diagnostic on
/// unknown gate kinds, non-finite angles, or dangling references.
Circuit deserialize(const std::string& text);

Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

}  // namespace dqc
