#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;
    char out0[64];

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_MEMREF_TEMP_OUTPUT, TEEC_NONE, TEEC_NONE, TEEC_NONE);
    op.params[0].tmpref.buffer = out0;
    op.params[0].tmpref.size = sizeof(out0);
    res = TEEC_InvokeCommand(sess, CMD_EXPORT, &op, &origin);
    if (res != TEEC_SUCCESS)
        return -1;
    printf("%s\n", out0);
    return 0;
}
