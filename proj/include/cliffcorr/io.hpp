#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffcorr/algebra.hpp"
#include "cliffcorr/module.hpp"

namespace cliffcorr::io {

/// File readers for the JSON input formats.  Every reader throws InvalidInput
/// on unreadable files, malformed JSON, schema violations, or data the
/// corresponding constructor rejects.  Integer entries are reduced mod p.

/// {"p": int, "dim": int, "one": [int...], "mul": [[i,j,k,c]...]}; triples
/// absent from "mul" are zero, duplicated (i,j,k) triples are rejected.
Algebra read_algebra(const std::string& path);

/// Either {"order": n, "table": [[int...]...]} (0-indexed, element 0 the
/// identity, optional "labels" ignored here) or {"degree": n, "generators":
/// [[permutation as image list]...]}.
CayleyTable read_group(const std::string& path);

/// {"alpha": [[int...]...]}, an order x order table of cocycle values.
/// Values are returned raw; range checks happen when the twisted group
/// algebra is built, since p is not part of this file.
std::vector<std::vector<std::uint64_t>> read_cocycle(const std::string& path);

/// {"matrices": [...]}, one square integer matrix per group element, read
/// over GF(p).
std::vector<Matrix> read_action(const std::string& path, std::uint64_t p);

/// {"dim": d, "action": [...]} with one d x d matrix per basis element of a,
/// each given either as a flat row-major list of d*d integers or as d rows
/// of d integers.
Module read_module(const std::string& path, const Algebra& a);

/// {"basis": [[int...]...]}, vectors in the coordinates of the ambient
/// algebra.  The span must be unital and closed under multiplication.
Subalgebra read_subalgebra(const std::string& path, const Algebra& ambient);

/// Serializers for the same formats, used to generate fixture files and to
/// round-trip objects through the readers.  Output is canonical: two-space
/// indentation, keys in alphabetical order, "mul" triples in lexicographic
/// order with zero entries omitted, module action matrices flat row-major.
std::string algebra_to_json(const Algebra& a);
std::string module_to_json(const Module& m);
std::string subalgebra_to_json(const Subalgebra& b);

}  // namespace cliffcorr::io
