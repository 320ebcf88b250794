#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "grasslab/morphism.hpp"

namespace grasslab {

/// Grammar (wedge binds tighter than +/-, both left-associative):
///   expr    := term (('+'|'-') term)*
///   term    := factor (('^'|'*') factor)*
///   factor  := literal | generator | '(' expr ')' | '[' expr ',' expr ']'
///            | '-' factor
///   literal := integer ('/' integer)?
/// Generators are written e3 or e{1,3,4} (strictly increasing indices); the
/// braced form is what the printer emits, so parse/format round-trips.
/// Throws SyntaxError (with position), IndexOutOfRange, DivisionByZero.
Multivector parse_expression(const std::string& text, int n,
                             const Field& field);

/// "Q", "GF:5" or "GF(5)". Throws InvalidField / CharacteristicTwo.
Field parse_field(const std::string& text);

std::string format_scalar(const Scalar& c);

/// Canonical text: terms by (grade, mask) ascending, unit coefficients
/// folded into the sign, monomials as e{i1,...,ik}. parse of the result
/// reproduces the element.
std::string format_multivector(const Multivector& a);

/// Generator images as "e1 -> ...; e2 -> ...".
std::string format_map(const AlgebraMap& m);

struct SubspaceFile {
  int n = 0;
  Field field = Field::rationals();
  std::vector<Multivector> basis;  // one per body line
};

/// Header line `n=<int> field=Q|GF(<p>)`, then one expression per line.
/// Blank lines are ignored. Throws IoError on a malformed header and the
/// parser's errors (tagged with the line number) on a malformed body line.
SubspaceFile read_subspace_file(std::istream& in);
SubspaceFile parse_subspace_file(const std::string& text);

Subspace to_subspace(const SubspaceFile& file);

void write_subspace_file(std::ostream& out, const Subspace& B);
std::string format_subspace_file(const Subspace& B);

}  // namespace grasslab
