#pragma once

#include "sweep/plan.hpp"

#include <filesystem>
#include <string>

namespace sweep {

/// Chunk plan file schema (bit-exact):
///
///   <?xml version="1.0" encoding="UTF-8"?>
///   <Experiment_plan>
///     <Simulation id="0" seed="0" finalStep="720" experiment="name" sourcePath="builtin">
///       <Parameters>
///         <Parameter name="basic_viral_release" type="FLOAT" value="0.01"/>
///       </Parameters>
///     </Simulation>
///   </Experiment_plan>
///
/// Two-space indentation, LF line endings, attribute values XML-escaped.
/// FLOAT values use the shortest round-trip decimal form (<= 17 significant
/// digits); exactly-integral values are written as type INT.
std::string chunk_xml_string(const Chunk& chunk, const ExplorationConfig& config);

/// Writes `plan-<chunkId>.xml` into `directory` and returns its path.
/// Re-running produces byte-identical output. Throws IoError with the path
/// on failure.
std::filesystem::path write_chunk_xml(const Chunk& chunk,
                                      const ExplorationConfig& config,
                                      const std::filesystem::path& directory);

/// Inverse of write_chunk_xml on its image. The chunk id is recovered from
/// the `plan-<id>.xml` file name. The schema does not carry point or
/// replication indices; when `replications` > 0 they are reconstructed from
/// the task id, otherwise both are left at 0. Throws FormatError with
/// file/line context on malformed input.
Chunk parse_chunk_xml(const std::filesystem::path& file,
                      std::int64_t replications = 0);

} // namespace sweep
