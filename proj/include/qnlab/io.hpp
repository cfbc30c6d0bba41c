#pragma once

// Serialization: binary field snapshots ("QNL1"), particle checkpoints
// ("QNP1"), and atomically written text files (CSV / JSON / configs).
// All files are written to a temporary name and renamed into place.

#include <cstdint>
#include <string>
#include <vector>

#include "qnlab/grid.hpp"

namespace qnlab {

struct ParticleEnsemble;  // particles.hpp

enum class FieldKind : std::uint64_t { scalar = 1, vector = 2, tensor = 3 };

void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const VectorField& f);
ScalarField read_scalar_field(const std::string& path);
VectorField read_vector_field(const std::string& path);

void write_ensemble(const std::string& path, const ParticleEnsemble& ens);
ParticleEnsemble read_ensemble(const std::string& path);

/// Shortest decimal form that round-trips a double (std::to_chars).
std::string format_double(double x);

/// Write text atomically (temp file + rename). Creates parent directories.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

/// Render rows as CSV with the given header line.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

}  // namespace qnlab
