#include <stdio.h>
#include <string.h>
#include "wga.h"

/* argv[1]: path to weave4_t2.sld */
int main(int argc, char **argv) {
    if (argc < 2) return 2;
    WgaDiagram *d = NULL;
    if (wga_diagram_from_file(argv[1], &d) != WGA_STATUS_OK) {
        fprintf(stderr, "%s\n", wga_last_error_message());
        return 1;
    }
    size_t tw = 0;
    double vol = 0.0;
    WgaGeometry g;
    if (wga_twist_number(d, &tw) != WGA_STATUS_OK || tw != 4) return 1;
    if (wga_volume_lower_bound(d, &vol) != WGA_STATUS_OK || vol < 7.3277 || vol > 7.3278) return 1;
    if (wga_classify(d, &g) != WGA_STATUS_OK || g != WGA_GEOMETRY_HYPERBOLIC) return 1;

    WgaDiagram *bad = NULL;
    if (wga_diagram_from_sld("{", &bad) != WGA_STATUS_PARSE || bad != NULL) return 1;
    if (wga_last_error_message() == NULL) return 1;

    char *json = NULL;
    if (wga_report_json(d, &json) != WGA_STATUS_OK || strstr(json, "\"tw\": 4") == NULL) return 1;
    wga_string_free(json);
    wga_diagram_free(d);
    printf("ok\n");
    return 0;
}
