// Load one family record, verify it, and assemble its matrix.
//
//   demo_verify_and_build [record.json]
//
// With no argument, a small bundled record is used.

#include <iostream>

#include "gsdf/family_io.hpp"
#include "gsdf/gs_matrix.hpp"

#ifndef GSDF_DATA_DIR
#define GSDF_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
  using namespace gsdf;
  const std::string path =
      argc > 1 ? argv[1] : std::string(GSDF_DATA_DIR "/corpus/001-v7.json");
  try {
    const RealizedFamily rf = load_family(path);
    const DifferenceFamily& fam = rf.family;
    std::cout << "record: " << path << "\n";
    std::cout << "v=" << fam.v() << " block sizes:";
    for (std::size_t s : fam.block_sizes()) std::cout << ' ' << s;
    std::cout << "\n";

    const VerifyResult vr = verify(fam);
    if (!vr.valid) {
      std::cout << "family does not verify: difference counts are not flat\n";
      return 1;
    }
    std::cout << "lambda=" << vr.parameters->lambda
              << " weight=" << vr.parameters->weight() << "\n";

    const PMMatrix m = assemble_gs(fam);
    std::cout << "matrix order " << m.order()
              << (is_hadamard(m) ? ", rows orthogonal" : ", NOT orthogonal")
              << (is_skew_type(m) ? ", skew-type" : "") << "\n";
    if (m.order() <= 40) std::cout << matrix_to_text(m);
    return is_hadamard(m) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
