#pragma once

#include <stdexcept>
#include <string>

namespace famedkit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FAMEDKIT_DEFINE_ERROR(Name)                                                      \
  class Name : public Error {                                                            \
  public:                                                                                \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}                 \
  }

// Triangulation input and validation.
FAMEDKIT_DEFINE_ERROR(MalformedDocument);
FAMEDKIT_DEFINE_ERROR(NotInvolution);
FAMEDKIT_DEFINE_ERROR(UnpairedFace);
FAMEDKIT_DEFINE_ERROR(SelfGluedFace);

// Orders, signs, cusps.
FAMEDKIT_DEFINE_ERROR(InvalidOrder);
FAMEDKIT_DEFINE_ERROR(NotOrdered);
FAMEDKIT_DEFINE_ERROR(NonOrientable);
FAMEDKIT_DEFINE_ERROR(NotOneCusp);
FAMEDKIT_DEFINE_ERROR(NoNullHomologousCurve);
FAMEDKIT_DEFINE_ERROR(InvalidEdgeIndex);

// Hyperbolic geometry.
FAMEDKIT_DEFINE_ERROR(NoConvergence);
FAMEDKIT_DEFINE_ERROR(DegenerateShape);
FAMEDKIT_DEFINE_ERROR(CertificationFailed);
FAMEDKIT_DEFINE_ERROR(NonPositiveShape);

// Pachner moves.
FAMEDKIT_DEFINE_ERROR(FaceInSingleTetrahedron);
FAMEDKIT_DEFINE_ERROR(EdgeNotDegreeThree);
FAMEDKIT_DEFINE_ERROR(RepeatedTetrahedronAroundEdge);

#undef FAMEDKIT_DEFINE_ERROR

} // namespace famedkit
