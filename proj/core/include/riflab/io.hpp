#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "riflab/gram.hpp"
#include "riflab/measure.hpp"
#include "riflab/poly.hpp"
#include "riflab/rif.hpp"
#include "riflab/stability.hpp"

namespace riflab::io {

/// File formats. Polynomials travel as JSON documents
///   { "bidegree": [n, m], "coeffs": [ {"i":., "j":., "re":., "im":.}, ... ] }
/// with unspecified entries zero and duplicate (i, j) pairs rejected.
/// Serialization is canonical: coefficients sorted by (i, j), exact zeros
/// omitted, shortest round-trip number formatting. Parsing a canonical
/// document and re-serializing it reproduces the bytes.
Poly2 parse_poly(const std::string& text);
std::string serialize_poly(const Poly2& p);
Poly2 load_poly(const std::filesystem::path& path);
void save_poly(const Poly2& p, const std::filesystem::path& path);

/// RIF descriptor: polynomial fields plus
///   "lambda": {"re":., "im":.}, "monomial_powers": [M, N].
/// Loading validates through make_rif and so can throw NotInner or
/// ZeroInOpenBidisc.
RationalInnerFunction parse_rif(const std::string& text);
std::string serialize_rif(const RationalInnerFunction& phi);
RationalInnerFunction load_rif(const std::filesystem::path& path);
void save_rif(const RationalInnerFunction& phi,
              const std::filesystem::path& path);

/// Sum-of-squares certificate: {"sos_1": [poly, ...], "sos_2": [poly, ...]}.
SosCertificate parse_sos(const std::string& text);
std::string serialize_sos(const SosCertificate& cert);
SosCertificate load_sos(const std::filesystem::path& path);

/// Scan report: CSV rows (delta, volume, std_error, reference, ratio)
/// followed by a '#'-prefixed JSON footer with the power-law fit and the
/// verdict. The body and footer are deterministic for a fixed config; the
/// optional JSON sibling adds a "timestamp" key, which is the only
/// nondeterministic field anywhere in the outputs.
std::string scan_to_csv(const CarlesonScan& scan);
std::string scan_to_json(const CarlesonScan& scan, std::uint64_t seed,
                         bool with_timestamp);

/// Truncation ladder report: CSV rows (N, lambda_max) with a '#'-prefixed
/// JSON footer carrying the verdict, the weights and the symbol hash.
std::string norm_scan_to_csv(const NormGrowthScan& scan, double beta_src,
                             double beta_tgt, std::uint64_t symbol_hash);

/// Shortest round-trip decimal form of a double (the canonical number format
/// used across all emitters).
std::string format_double(double v);

/// FNV-1a hash of a canonical serialization; reports embed it so a result
/// can be tied to the exact symbol it was computed from.
std::uint64_t content_hash(const std::string& canonical);

} // namespace riflab::io
