#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "mefkit/complex.hpp"
#include "mefkit/dynamics.hpp"
#include "mefkit/lattice.hpp"
#include "mefkit/quotient.hpp"
#include "mefkit/spectral.hpp"

namespace mefkit {

using Json = nlohmann::json;

// File round trips map missing/unreadable files to IoError and malformed
// content to ParseError. Keys come out sorted; that plus dump(2) makes the
// canonical text form byte-stable for identical data.
Json load_json(const std::filesystem::path& file);
void save_json(const std::filesystem::path& file, const Json& j);
std::string canonical_text(const Json& j);

// FNV-1a of the raw file bytes, 16 hex digits.
std::string file_hash(const std::filesystem::path& file);

// {"vertices": n, "edges": [[u,v],...], "squares": [[a,b,c,d],...]}
CellComplex complex_from_json(const Json& j);
Json complex_to_json(const CellComplex& k);
CellComplex load_complex(const std::filesystem::path& file);
void save_complex(const std::filesystem::path& file, const CellComplex& k);

// {"complex": path, "values": [[re,im],...]}; the path resolves relative to
// the directory of the function file itself.
LatticeFunction function_from_json(const Json& j,
                                   const std::filesystem::path& base_dir);
Json function_to_json(const LatticeFunction& f, const std::string& complex_ref);
LatticeFunction load_function(const std::filesystem::path& file);
void save_function(const std::filesystem::path& file, const LatticeFunction& f,
                   const std::string& complex_ref);

// {"domain": path, "codomain": path, "assignment": [int,...]}
QuotientMap map_from_json(const Json& j,
                          const std::filesystem::path& base_dir);
Json map_to_json(const QuotientMap& p, const std::string& domain_ref,
                 const std::string& codomain_ref);
QuotientMap load_map(const std::filesystem::path& file);
void save_map(const std::filesystem::path& file, const QuotientMap& p,
              const std::string& domain_ref, const std::string& codomain_ref);

// {"dim": n, "matrix": [[...]], "rotation": ["1/4", "0.618...", ...],
//  "warps": ["identity" | "square" | [t0,t1,...]], "grid": N}
TorusSystem system_from_json(const Json& j);
Json system_to_json(const TorusSystem& sys);
TorusSystem load_system(const std::filesystem::path& file);
void save_system(const std::filesystem::path& file, const TorusSystem& sys);

std::string rotation_entry_text(const RotationEntry& r);

Json eigen_hit_to_json(const EigenHit& hit);
EigenHit eigen_hit_from_json(const Json& j);

Json mef_report_to_json(const MEFReport& report);
MEFReport mef_report_from_json(const Json& j);

Json modulus_table_to_json(const ModulusTable& table);

}  // namespace mefkit
