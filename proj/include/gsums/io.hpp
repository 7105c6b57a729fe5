#pragma once

#include <string>

#include "gsums/forms.hpp"
#include "gsums/lattice.hpp"
#include "gsums/modp.hpp"

namespace gsums {

/// Form documents: {"group":{"orders":[...]}, "genvals":[["1/4","1/4"],...],
/// "gram":[["0/1",...],...]}. Only generator data is stored; the table is
/// rebuilt and revalidated on load.
std::string form_to_json(const TwoLinearForm& psi);
TwoLinearForm form_from_json(const std::string& text);

std::string cycsum_to_json(const CycSum& g);

/// Plain-text matrices: first line n, then n whitespace-separated rows.
IntSymMatrix matrix_from_text(const std::string& text);
std::string matrix_to_text(const IntSymMatrix& m);

std::string decomposition_to_json(const ReducedDecomposition& d);

/// {"p":2,"layers":[{"j":1,"matrix":[[...]]},...]}
PsiDecomposition psi_decomposition_from_json(const std::string& text);

std::string read_file(const std::string& path);

} // namespace gsums
