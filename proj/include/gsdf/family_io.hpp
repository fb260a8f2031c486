#pragma once
// JSON (de)serialization of family records, realization of orbit-form
// records into explicit block sets, and the batch checker for the bundled
// corpus of known families.
//
// Record schema (JSON object):
//   v        : odd positive integer, the modulus
//   k        : array of the four block sizes
//   lambda   : declared covering number (optional)
//   mu       : declared multiplier (optional, may be negative)
//   group    : generators or elements of a unit subgroup (optional)
//   exactly one of
//     explicit : four arrays of residues
//     reps     : four arrays of orbit representatives (requires "group")
//   annotations : free-form object carried through untouched (optional)

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "family.hpp"
#include "gs_matrix.hpp"
#include "residue_set.hpp"

namespace gsdf {

using json = nlohmann::ordered_json;

struct FamilyRecord {
  int v = 1;
  std::array<int, 4> k{0, 0, 0, 0};
  std::optional<long long> lambda;
  std::optional<long long> mu;
  std::optional<std::vector<int>> group;
  std::optional<std::array<std::vector<int>, 4>> explicit_blocks;
  std::optional<std::array<std::vector<int>, 4>> reps;
  json annotations;  // null when absent
};

namespace io_detail {

inline std::string ctx(const std::string& origin) {
  return origin.empty() ? std::string{} : origin + ": ";
}

[[noreturn]] inline void fail(const std::string& origin, const std::string& msg) {
  throw std::runtime_error(ctx(origin) + msg);
}

inline long long require_int(const json& j, const std::string& origin,
                             const std::string& field) {
  if (!j.is_number_integer())
    fail(origin, "field '" + field + "': expected an integer");
  return j.get<long long>();
}

inline std::vector<int> require_int_array(const json& j, const std::string& origin,
                                          const std::string& field) {
  if (!j.is_array())
    fail(origin, "field '" + field + "': expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(static_cast<int>(
        require_int(j[i], origin, field + "[" + std::to_string(i) + "]")));
  return out;
}

inline std::array<std::vector<int>, 4> require_block_lists(
    const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array() || j.size() != 4)
    fail(origin, "field '" + field + "': expected exactly four lists");
  std::array<std::vector<int>, 4> out;
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = require_int_array(j[i], origin, field + "[" + std::to_string(i) + "]");
  return out;
}

}  // namespace io_detail

inline FamilyRecord parse_family(const std::string& text,
                                 const std::string& origin = "") {
  using io_detail::fail;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(origin, "top-level value must be an object");

  FamilyRecord rec;
  if (!j.contains("v")) fail(origin, "field 'v' is required");
  const long long v = io_detail::require_int(j["v"], origin, "v");
  if (v < 1 || v % 2 == 0)
    fail(origin, "field 'v': must be an odd positive integer");
  rec.v = static_cast<int>(v);

  if (!j.contains("k")) fail(origin, "field 'k' is required");
  const std::vector<int> k = io_detail::require_int_array(j["k"], origin, "k");
  if (k.size() != 4) fail(origin, "field 'k': expected four block sizes");
  for (std::size_t i = 0; i < 4; ++i) {
    if (k[i] < 0 || k[i] > rec.v)
      fail(origin, "field 'k[" + std::to_string(i) + "]': size out of range");
    rec.k[i] = k[i];
  }

  if (j.contains("lambda"))
    rec.lambda = io_detail::require_int(j["lambda"], origin, "lambda");
  if (j.contains("mu"))
    rec.mu = io_detail::require_int(j["mu"], origin, "mu");
  if (j.contains("group"))
    rec.group = io_detail::require_int_array(j["group"], origin, "group");

  const bool has_explicit = j.contains("explicit");
  const bool has_reps = j.contains("reps");
  if (has_explicit == has_reps)
    fail(origin, "exactly one of 'explicit' and 'reps' is required");
  if (has_explicit) {
    auto lists = io_detail::require_block_lists(j["explicit"], origin, "explicit");
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<char> seen(static_cast<std::size_t>(rec.v), 0);
      for (std::size_t t = 0; t < lists[i].size(); ++t) {
        const int r = lists[i][t];
        const std::string where =
            "explicit[" + std::to_string(i) + "][" + std::to_string(t) + "]";
        if (r < 0 || r >= rec.v)
          fail(origin, "field '" + where + "': residue out of range");
        if (seen[static_cast<std::size_t>(r)])
          fail(origin, "field '" + where + "': duplicate residue");
        seen[static_cast<std::size_t>(r)] = 1;
      }
    }
    rec.explicit_blocks = std::move(lists);
  } else {
    if (!rec.group) fail(origin, "'reps' requires 'group'");
    auto lists = io_detail::require_block_lists(j["reps"], origin, "reps");
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t t = 0; t < lists[i].size(); ++t)
        if (lists[i][t] < 0 || lists[i][t] >= rec.v)
          fail(origin, "field 'reps[" + std::to_string(i) + "][" +
                           std::to_string(t) + "]': residue out of range");
    rec.reps = std::move(lists);
  }

  if (j.contains("annotations")) {
    if (!j["annotations"].is_object())
      fail(origin, "field 'annotations': expected an object");
    rec.annotations = j["annotations"];
  }
  return rec;
}

struct RealizedFamily {
  FamilyRecord record;
  DifferenceFamily family;
  std::optional<UnitSubgroup> group;
};

// Turn a parsed record into explicit block sets, expanding orbit
// representatives through the declared group and checking the declared
// block sizes.
inline RealizedFamily realize(FamilyRecord rec, const std::string& origin = "") {
  using io_detail::fail;
  DifferenceFamily fam(rec.v);
  std::optional<UnitSubgroup> group;
  if (rec.group) {
    try {
      group = subgroup_closure(rec.v, *rec.group);
    } catch (const std::invalid_argument& e) {
      fail(origin, std::string("field 'group': ") + e.what());
    }
  }
  if (rec.explicit_blocks) {
    for (std::size_t i = 0; i < 4; ++i)
      fam[i] = ResidueSet::of(rec.v, (*rec.explicit_blocks)[i]);
  } else {
    for (std::size_t i = 0; i < 4; ++i)
      fam[i] = expand_orbits(*group, (*rec.reps)[i]);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (fam[i].size() != rec.k[i])
      fail(origin, "block " + std::to_string(i) + " size mismatch: declared " +
                       std::to_string(rec.k[i]) + ", realized " +
                       std::to_string(fam[i].size()));
  }
  return RealizedFamily{std::move(rec), std::move(fam), std::move(group)};
}

// Read, parse, and realize a record file.  When the record declares a
// lambda and the realized family verifies with a different lambda, loading
// fails: the file contradicts itself.
inline RealizedFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) io_detail::fail(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  RealizedFamily rf = realize(parse_family(buf.str(), path.string()), path.string());
  if (rf.record.lambda) {
    const VerifyResult vr = verify(rf.family);
    if (vr.valid && vr.parameters->lambda != *rf.record.lambda)
      io_detail::fail(path.string(),
                      "lambda mismatch: declared " + std::to_string(*rf.record.lambda) +
                          ", realized " + std::to_string(vr.parameters->lambda));
  }
  return rf;
}

// Emit a record as JSON text.  Orbit-form records are re-emitted with each
// orbit named by its minimum element, so serialize(parse(.)) is
// semantically identical to its input (same realized family) even when the
// incoming representatives were not minimal.
inline std::string serialize_family(const RealizedFamily& rf) {
  json j;
  j["v"] = rf.record.v;
  j["k"] = rf.record.k;
  if (rf.record.lambda) j["lambda"] = *rf.record.lambda;
  if (rf.record.mu) j["mu"] = *rf.record.mu;
  if (rf.record.group) j["group"] = *rf.record.group;
  if (rf.record.reps) {
    json lists = json::array();
    for (std::size_t i = 0; i < 4; ++i)
      lists.push_back(orbit_representatives(*rf.group, rf.family[i]));
    j["reps"] = std::move(lists);
  } else {
    json lists = json::array();
    for (std::size_t i = 0; i < 4; ++i) lists.push_back(rf.family[i].members());
    j["explicit"] = std::move(lists);
  }
  if (!rf.record.annotations.is_null()) j["annotations"] = rf.record.annotations;
  return j.dump(2) + "\n";
}

// --- corpus checking --------------------------------------------------------

inline std::vector<std::filesystem::path> corpus_files(
    const std::filesystem::path& data_dir) {
  std::vector<std::filesystem::path> out;
  const std::filesystem::path dir = data_dir / "corpus";
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("corpus directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

struct CorpusReport {
  int records = 0;
  int matrices_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Check every record in <data_dir>/corpus: the family must verify with the
// declared sizes and lambda and have weight v; every annotation must agree
// with what is recomputed from the blocks; and for v up to hadamard_vmax
// the assembled matrix must have orthogonal rows, being skew-type exactly
// when block 0 is a skew set.
inline CorpusReport run_corpus(const std::filesystem::path& data_dir,
                               int hadamard_vmax, std::ostream* log = nullptr) {
  CorpusReport report;
  for (const auto& path : corpus_files(data_dir)) {
    const std::string name = path.filename().string();
    auto fail = [&](const std::string& msg) {
      report.failures.push_back(name + ": " + msg);
      if (log) *log << "FAIL " << name << ": " << msg << '\n';
    };
    ++report.records;
    std::optional<RealizedFamily> loaded;
    try {
      loaded = load_family(path);
    } catch (const std::exception& e) {
      report.failures.push_back(e.what());
      if (log) *log << "FAIL " << e.what() << '\n';
      continue;
    }
    const RealizedFamily& rf = *loaded;
    const DifferenceFamily& fam = rf.family;

    const VerifyResult vr = verify(fam);
    if (!vr.valid) {
      fail("family does not verify");
      continue;
    }
    if (vr.parameters->weight() != fam.v())
      fail("weight " + std::to_string(vr.parameters->weight()) +
           " differs from v=" + std::to_string(fam.v()));

    const json& an = rf.record.annotations;
    std::optional<StructureReport> sr;
    if (rf.record.mu) sr = classify(fam, *rf.record.mu);
    if (!an.is_null()) {
      if (an.contains("structure")) {
        if (!sr) {
          fail("structure annotated but no multiplier on record");
        } else if (to_string(sr->kind) != an["structure"].get<std::string>()) {
          fail("structure: annotated " + an["structure"].get<std::string>() +
               ", classified " + to_string(sr->kind) +
               " under mu=" + std::to_string(sr->mu));
        }
      }
      if (an.contains("symbol") && sr) {
        if (sr->symmetry_symbol != an["symbol"].get<std::string>())
          fail("symbol: annotated " + an["symbol"].get<std::string>() +
               ", computed " + sr->symmetry_symbol);
      }
      if (an.contains("classes") && sr) {
        std::vector<std::string> want =
            an["classes"].get<std::vector<std::string>>();
        std::vector<std::string> got = sr->named_classes();
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        if (want != got) fail("named classes disagree with annotation");
      }
      if (an.contains("x0_fixed") && sr) {
        if (sr->fixes_x0 != an["x0_fixed"].get<bool>())
          fail("x0_fixed: annotated " +
               std::string(an["x0_fixed"].get<bool>() ? "true" : "false") +
               ", computed " + (sr->fixes_x0 ? "true" : "false"));
      }
      if (an.contains("x3_is_neg_x1") && an["x3_is_neg_x1"].get<bool>()) {
        if (negate(fam[1]) != fam[3]) fail("annotated x3 = -x1 does not hold");
      }
    }

    if (fam.v() <= hadamard_vmax) {
      const PMMatrix m = assemble_gs(fam);
      ++report.matrices_checked;
      if (!is_hadamard(m)) fail("assembled matrix is not row-orthogonal");
      const bool skew_block = is_skew(fam[0]);
      if (is_skew_type(m) != skew_block)
        fail(std::string("skew-type matrix check: block 0 is ") +
             (skew_block ? "skew" : "not skew") + " but the matrix is " +
             (is_skew_type(m) ? "" : "not ") + "skew-type");
    }
  }
  if (log)
    *log << "records=" << report.records
         << " matrices=" << report.matrices_checked
         << " failures=" << report.failures.size() << '\n';
  return report;
}

}  // namespace gsdf
