#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;
    char out2[64];

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_NONE, TEEC_MEMREF_TEMP_OUTPUT, TEEC_NONE);
    op.params[2].tmpref.buffer = out2;
    op.params[2].tmpref.size = sizeof(out2);
    res = TEEC_InvokeCommand(sess, CMD_TOKEN, &op, &origin);
    if (res != TEEC_SUCCESS)
        return -1;
    printf("%s\n", out2);
    return 0;
}
