/* Build from crates/ffi: cc examples/ext.c -Iinclude ../../target/debug/libpicext_ffi.a -lm -lpthread -ldl */
#include <inttypes.h>
#include <stdio.h>

#include "picext.h"

int main(void) {
    PicextComplex *a = picext_complex_cyclic(4, 0);
    PicextComplex *b = picext_complex_cyclic(6, 0);
    PicextExtGroup *g = NULL;
    if (picext_ext_group(a, b, 1, &g) != PICEXT_STATUS_OK) {
        fprintf(stderr, "%s\n", picext_last_error());
        return 1;
    }
    int64_t ds[8];
    size_t n = 0;
    picext_ext_group_divisors(g, ds, 8, &n);
    printf("Ext^1(Z/4, Z/6):");
    for (size_t k = 0; k < n; k++) {
        printf(" %" PRId64, ds[k]);
    }
    printf("\n");
    picext_ext_group_free(g);
    picext_complex_free(a);
    picext_complex_free(b);
    return 0;
}
