#pragma once

#include <string>

#include "trinorm/pipeline.hpp"

namespace trinorm {

// Versioned JSON document: version, n, m, whitening{linear,offset},
// lift{alphas,betas,z_whitening{linear,offset}}, rotation, residual_norm.
// Matrices carry explicit {rows, cols, data} shapes; numbers are written
// with shortest round-trip precision, so the round trip is bit-exact.
std::string serialize(const FittedTransform& model);

// Throws MalformedDocument / VersionMismatch.
FittedTransform deserialize(const std::string& document);

void save_model(const FittedTransform& model, const std::string& path);
FittedTransform load_model(const std::string& path);

} // namespace trinorm
