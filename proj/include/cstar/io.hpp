#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "cstar/algebra.hpp"
#include "cstar/eigenstates.hpp"
#include "cstar/state.hpp"

namespace cstar {

// Operator documents look like
//   {"shape": [n1, n2, ...],
//    "blocks": [{"re": [[...]], "im": [[...]]}, ...]}
// with row-major matrices; a missing "im" means zero imaginary part. State
// documents use the key "rho" in place of "blocks" and are validated on
// load. Writers emit shortest round-tripping decimals, so re-reading
// reproduces every value exactly.

AlgebraElement element_from_json(const nlohmann::json& doc);
nlohmann::json element_to_json(const AlgebraElement& x);

State state_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const State& E);

nlohmann::json certificate_to_json(const EigenstateCertificate& cert);

AlgebraElement load_element(const std::string& path);
State load_state(const std::string& path);
void save_json(const nlohmann::json& doc, const std::string& path);

// Parses a file as JSON, wrapping parse failures in MalformedInput.
nlohmann::json load_json(const std::string& path);

}  // namespace cstar
