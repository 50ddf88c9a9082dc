#include "einstab/einstab.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "einstab/catalog.hpp"
#include "einstab/error.hpp"
#include "einstab/flow.hpp"
#include "einstab/io.hpp"
#include "einstab/pipeline.hpp"

struct einstab_entry {
  einstab::CatalogEntry entry;
};

struct einstab_signomial {
  einstab::Signomial f;
};

namespace {

thread_local std::string last_error;

einstab_status fail(einstab_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
einstab_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const einstab::ParseError& e) {
    return fail(EINSTAB_PARSE, e.what());
  } catch (const einstab::RangeError& e) {
    return fail(EINSTAB_RANGE, e.what());
  } catch (const einstab::DomainError& e) {
    return fail(EINSTAB_DOMAIN, e.what());
  } catch (const einstab::ConvergenceError& e) {
    return fail(EINSTAB_CONVERGENCE, e.what());
  } catch (const einstab::IoError& e) {
    return fail(EINSTAB_IO, e.what());
  } catch (const einstab::InvalidArgument& e) {
    return fail(EINSTAB_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EINSTAB_INTERNAL, e.what());
  } catch (...) {
    return fail(EINSTAB_INTERNAL, "unknown exception");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

einstab::PipelineOptions to_pipeline(const einstab_options* o) {
  einstab_options d;
  einstab_default_options(&d);
  if (!o) o = &d;
  einstab::PipelineOptions p;
  switch (o->mode) {
    case EINSTAB_MODE_EXACT: p.mode = einstab::ProbeMode::exact; break;
    case EINSTAB_MODE_FLOAT: p.mode = einstab::ProbeMode::floating; break;
    case EINSTAB_MODE_AUTO: p.mode = einstab::ProbeMode::automatic; break;
    default: throw einstab::InvalidArgument("unknown probe mode");
  }
  if (!(o->kernel_tol > 0) || !(o->tol_low > 0) || !(o->tol_high > 0) || !(o->witness_eps > 0))
    throw einstab::InvalidArgument("tolerances must be positive");
  p.classify.kernel_tol = o->kernel_tol;
  p.verdict.tol_low = o->tol_low;
  p.verdict.tol_high = o->tol_high;
  p.witness_eps = o->witness_eps;
  return p;
}

einstab_verdict to_c(einstab::Verdict v) {
  switch (v) {
    case einstab::Verdict::NotLocalMax: return EINSTAB_NOT_LOCAL_MAX;
    case einstab::Verdict::StrictDescent: return EINSTAB_STRICT_DESCENT;
    case einstab::Verdict::Inconclusive: break;
  }
  return EINSTAB_INCONCLUSIVE;
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw einstab::InvalidArgument(std::string(what) + " must not be NULL");
}

einstab::Family family_or_throw(const char* name) {
  const auto f = einstab::parse_family(name);
  if (!f) throw einstab::InvalidArgument(std::string("unknown family '") + name + "'");
  return *f;
}

}  // namespace

extern "C" {

const char* einstab_version(void) { return "0.1.0"; }

const char* einstab_last_error(void) { return last_error.c_str(); }

void einstab_free_string(char* s) { std::free(s); }

void einstab_default_options(einstab_options* out) {
  if (!out) return;
  out->mode = EINSTAB_MODE_AUTO;
  out->kernel_tol = einstab::ClassifyOptions{}.kernel_tol;
  out->tol_low = einstab::VerdictOptions{}.tol_low;
  out->tol_high = einstab::VerdictOptions{}.tol_high;
  out->witness_eps = einstab::PipelineOptions{}.witness_eps;
}

einstab_status einstab_families_json(const char* family, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    nlohmann::json list = nlohmann::json::array();
    for (const auto& info : einstab::families()) {
      if (family && info.id != family_or_throw(family)) continue;
      list.push_back({{"name", info.name}, {"title", info.title}, {"min_n", info.min_n}, {"uses_n", info.uses_n}});
    }
    *out_json = duplicate(list.dump(2));
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_build(const char* family, int n, einstab_entry** out) {
  return guarded([&] {
    require(family, "family");
    require(out, "out");
    *out = new einstab_entry{einstab::build(family_or_throw(family), n)};
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_load(const char* path, einstab_entry** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new einstab_entry{einstab::load_custom(path)};
    return EINSTAB_OK;
  });
}

void einstab_entry_free(einstab_entry* entry) { delete entry; }

einstab_status einstab_entry_dimension(const einstab_entry* entry, size_t* out) {
  return guarded([&] {
    require(entry, "entry");
    require(out, "out");
    *out = entry->entry.chart.dimension();
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_scal(const einstab_entry* entry, const double* point, size_t dim, double* out) {
  return guarded([&] {
    require(entry, "entry");
    require(out, "out");
    if (dim != entry->entry.chart.dimension()) throw einstab::InvalidArgument("point has the wrong dimension");
    if (dim > 0) require(point, "point");
    const std::span<const double> p(point, dim);
    for (double x : p)
      if (!(x > 0)) throw einstab::DomainError("point must be strictly positive");
    *out = entry->entry.chart.reduced.eval(p);
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_probe(const einstab_entry* entry, const einstab_options* options,
                                   einstab_probe_summary* out) {
  return guarded([&] {
    require(entry, "entry");
    require(out, "out");
    const einstab::EntryReport rep = einstab::run_entry(entry->entry, to_pipeline(options));
    if (rep.probes.empty()) throw einstab::DomainError("no kernel direction to probe along");
    const auto& p = rep.probes.front();
    out->s1 = einstab::to_double(p.result.s1);
    out->s2 = einstab::to_double(p.result.s2);
    out->s3 = einstab::to_double(p.result.s3);
    out->exact = p.result.mode == einstab::EvalMode::exact;
    out->verdict = to_c(*p.result.verdict);
    out->witness_improvement = p.witness ? p.witness->improvement : 0.0;
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_report_json(const einstab_entry* entry, const einstab_options* options,
                                         char** out_json) {
  return guarded([&] {
    require(entry, "entry");
    require(out_json, "out_json");
    *out_json = duplicate(einstab::report_to_json(einstab::run_entry(entry->entry, to_pipeline(options))).dump(2));
    return EINSTAB_OK;
  });
}

einstab_status einstab_entry_space_json(const einstab_entry* entry, char** out_json) {
  return guarded([&] {
    require(entry, "entry");
    require(out_json, "out_json");
    *out_json = duplicate(einstab::entry_to_json(entry->entry).dump(2));
    return EINSTAB_OK;
  });
}

einstab_status einstab_batch_report_json(const einstab_batch_request* request, const einstab_options* options,
                                         char** out_json) {
  return guarded([&] {
    require(request, "request");
    require(out_json, "out_json");
    std::vector<einstab::BatchRequest> jobs;
    auto add = [&](einstab::Family f, const int* ns, size_t count) {
      if (count > 0) require(ns, "parameter list");
      for (size_t k = 0; k < count; ++k) jobs.emplace_back(f, ns[k]);
    };
    add(einstab::Family::su_n, request->su_n, request->su_count);
    add(einstab::Family::su2n_mod_spn, request->sp_n, request->sp_count);
    add(einstab::Family::so2n_flag, request->flag_n, request->flag_count);
    if (request->include_e6) jobs.emplace_back(einstab::Family::e6_su2_so6, 0);
    // validate before fanning out so range errors surface as such
    for (const auto& [f, n] : jobs) einstab::build(f, n);
    *out_json = duplicate(einstab::batch_to_json(einstab::run_batch(jobs, to_pipeline(options))).dump(2));
    return EINSTAB_OK;
  });
}

einstab_status einstab_custom_report_json(const char* path, int search, int eliminate,
                                          const einstab_options* options, char** out_json) {
  return guarded([&] {
    require(path, "path");
    require(out_json, "out_json");
    std::optional<std::size_t> e;
    if (eliminate >= 0) e = static_cast<std::size_t>(eliminate);
    *out_json = duplicate(einstab::batch_to_json(einstab::run_custom(path, e, search != 0, to_pipeline(options))).dump(2));
    return EINSTAB_OK;
  });
}

einstab_status einstab_verify_constants_json(const char* algebra, char** out_json) {
  return guarded([&] {
    require(algebra, "algebra");
    require(out_json, "out_json");
    const einstab::ConstantsCheck check = einstab::verify_constants(algebra);
    *out_json = duplicate(einstab::constants_to_json(check).dump(2));
    if (!(check.max_deviation <= 1e-8)) {
      std::ostringstream msg;
      msg << algebra << ": maximum deviation " << check.max_deviation << " exceeds 1e-8";
      return fail(EINSTAB_VERIFY, msg.str());
    }
    return EINSTAB_OK;
  });
}

einstab_status einstab_flow_csv(const einstab_entry* entry, const double* start, size_t dim, double step,
                                long max_steps, double offset, char** out_csv) {
  return guarded([&] {
    require(entry, "entry");
    require(out_csv, "out_csv");
    const auto& e = entry->entry;
    std::vector<double> u;
    if (start) {
      if (dim != e.chart.dimension()) throw einstab::InvalidArgument("start has the wrong dimension");
      u.assign(start, start + dim);
    } else {
      u = e.critical_point.approx;
      if (e.kernel_direction)
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += offset * e.kernel_direction->approx[i];
    }
    einstab::FlowOptions fo;
    if (step > 0) fo.step = step;
    if (max_steps > 0) fo.max_steps = max_steps;
    std::ostringstream out;
    einstab::integrate_ascent(e.chart, u, fo).write_csv(out);
    *out_csv = duplicate(out.str());
    return EINSTAB_OK;
  });
}

einstab_status einstab_signomial_parse(const char* text, size_t arity, einstab_signomial** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new einstab_signomial{einstab::Signomial::parse(text, arity)};
    return EINSTAB_OK;
  });
}

void einstab_signomial_free(einstab_signomial* f) { delete f; }

einstab_status einstab_signomial_partial(const einstab_signomial* f, size_t var, einstab_signomial** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    if (var >= f->f.arity()) throw einstab::InvalidArgument("variable index out of range");
    *out = new einstab_signomial{f->f.partial(var)};
    return EINSTAB_OK;
  });
}

einstab_status einstab_signomial_eval(const einstab_signomial* f, const double* point, size_t arity, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    if (arity != f->f.arity()) throw einstab::InvalidArgument("point has the wrong arity");
    if (arity > 0) require(point, "point");
    *out = f->f.eval(std::span<const double>(point, arity));
    return EINSTAB_OK;
  });
}

einstab_status einstab_signomial_to_string(const einstab_signomial* f, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = duplicate(f->f.to_string());
    return EINSTAB_OK;
  });
}

}  // extern "C"
