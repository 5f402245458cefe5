#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;
    char out1[64];

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_MEMREF_TEMP_OUTPUT, TEEC_NONE, TEEC_NONE);
    op.params[1].tmpref.buffer = out1;
    op.params[1].tmpref.size = sizeof(out1);
    res = TEEC_InvokeCommand(sess, CMD_RUN, &op, &origin);
    if (res != TEEC_SUCCESS)
        return -1;
    printf("%s\n", out1);
    return 0;
}
