#include <assert.h>
int main() {
    int s = 0;
    int i = 0;
    while (i < 200 && __VERIFIER_nondet_int()) {
        s = s + i;
        i = i + 1;
    }
    assert(s >= i - 1);
    return 0;
}
