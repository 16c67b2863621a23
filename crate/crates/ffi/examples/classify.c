/* Minimal C consumer of the entsep C ABI.
 *
 * Build (from the workspace root, after `cargo build -p entsep-ffi`):
 *
 *   cc -std=c11 -Icrates/ffi/include crates/ffi/examples/classify.c \
 *      target/debug/libentsep_ffi.a -lm -o classify_demo
 */
#include <assert.h>
#include <math.h>
#include <stdio.h>

#include "entsep.h"

int main(void) {
    printf("entsep %s\n", entsep_version());

    /* Werner state at p = 0.5: NPT but useless for dense coding. */
    EntsepState *state = NULL;
    assert(entsep_state_werner(0.5, &state) == ENTSEP_STATUS_OK);

    double margin = 0.0;
    bool violated = false;
    assert(entsep_ppt_test(state, 1e-9, &margin, &violated) == ENTSEP_STATUS_OK);
    printf("werner(0.5): PT margin % .6f, violated: %s\n", margin,
           violated ? "yes" : "no");

    EntsepClass cls;
    assert(entsep_classify(state, &cls) == ENTSEP_STATUS_OK);
    printf("werner(0.5): class %s\n", entsep_class_name(cls));
    entsep_state_free(state);

    /* The singlet: dense-codeable, maximal CHSH violation. */
    assert(entsep_state_bell(ENTSEP_BELL_PSI_MINUS, &state) == ENTSEP_STATUS_OK);

    double one_capacity, reported, advantage;
    assert(entsep_dc_capacity(state, &one_capacity, &reported, &advantage) ==
           ENTSEP_STATUS_OK);
    printf("singlet: capacity %.6f bits (advantage %.6f)\n", reported, advantage);

    double chsh = 0.0;
    assert(entsep_chsh_maximize(state, 16, 1, &chsh) == ENTSEP_STATUS_OK);
    printf("singlet: max CHSH %.9f (2*sqrt(2) = %.9f)\n", chsh, 2.0 * sqrt(2.0));

    char *json = NULL;
    assert(entsep_classify_json(state, &json) == ENTSEP_STATUS_OK);
    printf("singlet report: %s\n", json);
    entsep_string_free(json);
    entsep_state_free(state);

    return 0;
}
