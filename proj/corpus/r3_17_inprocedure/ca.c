#include <stdio.h>
#include <string.h>
#include <tee_client_api.h>

int run_client(TEEC_Context *ctx, TEEC_Session *sess)
{
    TEEC_Operation op;
    uint32_t origin;
    TEEC_Result res;
    TEEC_SharedMemory shm1 = { .size = 256, .flags = TEEC_MEM_INPUT | TEEC_MEM_OUTPUT };

    memset(&op, 0, sizeof(op));
    op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_MEMREF_WHOLE, TEEC_NONE, TEEC_NONE);
    TEEC_AllocateSharedMemory(ctx, &shm1);
    op.params[1].memref.parent = &shm1;
    op.params[1].memref.size = shm1.size;
    res = TEEC_InvokeCommand(sess, CMD_RUN, &op, &origin);
    if (res != TEEC_SUCCESS)
        return -1;
    return 0;
}
