/*
 * housingforge C API
 *
 * Shared-library surface for the solderless-mount housing toolchain:
 * board/library parsing, bolt planning, design-rule checks, housing mesh
 * generation and STL export, component-reuse reports and the housing
 * durability ledger.
 *
 * Conventions:
 *  - every object is an opaque handle freed with its hf_*_free function;
 *  - functions return hf_status; on failure hf_last_error() carries a
 *    human-readable message for the calling thread;
 *  - all lengths are millimeters;
 *  - output paths accept "-" to mean stdout for text artifacts.
 */
#ifndef HOUSINGFORGE_H
#define HOUSINGFORGE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hf_status {
  HF_OK = 0,
  HF_E_IO = 1,
  HF_E_SYNTAX = 2,
  HF_E_UNKNOWN_PACKAGE = 3,
  HF_E_MISSING_OUTLINE = 4,
  HF_E_DEGENERATE_OUTLINE = 5,
  HF_E_COMPONENT_OUTSIDE_OUTLINE = 6,
  HF_E_DUPLICATE_PACKAGE = 7,
  HF_E_INVARIANT = 8,
  HF_E_PACKAGE_TOO_SMALL = 9,
  HF_E_UNSUPPORTED_ON_PROFILE = 10,
  HF_E_MISSING_CAVITY_MODEL = 11,
  HF_E_OUT_OF_CALIBRATED_RANGE = 12,
  HF_E_INFEASIBLE = 13,
  HF_E_BOOLEAN_FAILURE = 14,
  HF_E_CAVITY_OVERLAP = 15,
  HF_E_UNKNOWN_NET = 16,
  HF_E_MISSING_PART_NUMBERS = 17,
  HF_E_INVALID_ARGUMENT = 18
} hf_status;

typedef enum hf_format {
  HF_FORMAT_AUTO = 0,   /* by file extension (.kicad_pcb -> KiCad subset) */
  HF_FORMAT_NATIVE = 1, /* boardspec v1 */
  HF_FORMAT_KICAD = 2   /* KiCad subset */
} hf_format;

typedef enum hf_profile {
  HF_PROFILE_RESIN = 0,
  HF_PROFILE_FDM_PLA = 1,
  HF_PROFILE_CNC_MDF = 2
} hf_profile;

typedef enum hf_text_format { HF_TEXT = 0, HF_TSV = 1 } hf_text_format;

typedef struct hf_library hf_library;
typedef struct hf_board hf_board;
typedef struct hf_calibration hf_calibration;
typedef struct hf_plan hf_plan;
typedef struct hf_mesh hf_mesh;
typedef struct hf_drc_report hf_drc_report;
typedef struct hf_reuse_report hf_reuse_report;
typedef struct hf_ledger hf_ledger;

typedef struct hf_housing_config {
  double thickness;      /* housing thickness, 1..5 */
  double bolt_diameter;  /* >= 1 */
  int circle_segments;   /* >= 8 */
  hf_profile profile;
  int ascii_stl;         /* 0 = binary STL */
} hf_housing_config;

typedef struct hf_mesh_diag {
  int watertight;
  int components;
  size_t triangles;
  size_t boundary_edges;
  size_t nonmanifold_edges;
  double volume;
  double bbox_min[3];
  double bbox_max[3];
} hf_mesh_diag;

const char* hf_version(void);
/* Message for the last failing call on this thread. */
const char* hf_last_error(void);
const char* hf_status_name(hf_status status);

void hf_housing_config_default(hf_housing_config* cfg);

/* ---- package library ---- */
hf_status hf_library_default(hf_library** out);
hf_status hf_library_load_file(const char* path, hf_library** out);
hf_status hf_library_save_file(const hf_library* lib, const char* path);
size_t hf_library_package_count(const hf_library* lib);
const char* hf_library_package_name(const hf_library* lib, size_t index);
void hf_library_free(hf_library* lib);

/* ---- board designs ---- */
hf_status hf_board_parse_file(const char* path, hf_format format,
                              const hf_library* lib, hf_board** out);
hf_status hf_board_save_file(const hf_board* board, const char* path);
const char* hf_board_name(const hf_board* board);
size_t hf_board_component_count(const hf_board* board);
void hf_board_free(hf_board* board);

/* ---- span calibration ---- */
hf_status hf_calibration_default(hf_calibration** out);
hf_status hf_calibration_load_file(const char* path, hf_calibration** out);
hf_status hf_max_span(const hf_calibration* cal, double thickness, double* out_span);
void hf_calibration_free(hf_calibration* cal);

/* ---- bolt planning ---- */
hf_status hf_plan_bolts(const hf_board* board, const hf_library* lib,
                        double thickness, const hf_calibration* cal,
                        double bolt_diameter, hf_plan** out);
size_t hf_plan_hole_count(const hf_plan* plan);
size_t hf_plan_shared_hole_count(const hf_plan* plan);
double hf_plan_max_span_used(const hf_plan* plan);
/* Independent invariant re-check; returns violation count via out param. */
hf_status hf_plan_verify(const hf_board* board, const hf_library* lib,
                         const hf_plan* plan, double thickness,
                         const hf_calibration* cal, size_t* out_violations);
hf_status hf_plan_write(const hf_plan* plan, const hf_calibration* cal,
                        const char* path);
void hf_plan_free(hf_plan* plan);

/* ---- design-rule check and assembly report ---- */
hf_status hf_drc_run(const hf_board* board, const hf_library* lib,
                     const hf_plan* plan, const hf_housing_config* cfg,
                     const hf_calibration* cal, hf_drc_report** out);
size_t hf_drc_count(const hf_drc_report* report);
size_t hf_drc_error_count(const hf_drc_report* report);
hf_status hf_drc_write(const hf_drc_report* report, hf_text_format format,
                       const char* path);
hf_status hf_report_write(const hf_board* board, const hf_library* lib,
                          const hf_plan* plan, const hf_calibration* cal,
                          hf_text_format format, const char* path);
void hf_drc_report_free(hf_drc_report* report);

/* ---- housing mesh ---- */
hf_status hf_build_housing(const hf_board* board, const hf_plan* plan,
                           const hf_library* lib, const hf_housing_config* cfg,
                           hf_mesh** out);
hf_status hf_mesh_diagnostics(const hf_mesh* mesh, hf_mesh_diag* out);
hf_status hf_mesh_write_stl(const hf_mesh* mesh, const char* path, int ascii);
void hf_mesh_free(hf_mesh* mesh);

/* ---- component reuse ---- */
hf_status hf_reuse_diff(const hf_board* old_board, const hf_board* new_board,
                        hf_reuse_report** out);
double hf_reuse_fraction(const hf_reuse_report* report);
int hf_reuse_matched_total(const hf_reuse_report* report);
int hf_reuse_new_total(const hf_reuse_report* report);
hf_status hf_reuse_write(const hf_reuse_report* report, hf_text_format format,
                         const char* path);
void hf_reuse_report_free(hf_reuse_report* report);

/* ---- housing durability ledger ---- */
hf_status hf_ledger_load(const char* path, hf_ledger** out); /* missing -> empty */
hf_status hf_ledger_save(const hf_ledger* ledger, const char* path);
/* Increments the cycle count; *out_warning is 1 once the housing reached the
 * durability limit and should be reprinted. */
hf_status hf_ledger_record(hf_ledger* ledger, const char* housing_id,
                           int* out_count, int* out_warning);
int hf_ledger_count(const hf_ledger* ledger, const char* housing_id);
hf_status hf_ledger_write(const hf_ledger* ledger, hf_text_format format,
                          const char* path);
void hf_ledger_free(hf_ledger* ledger);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HOUSINGFORGE_H */
