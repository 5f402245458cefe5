#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    char *in = params[1].memref.buffer;
    uint32_t len = params[1].memref.size;
    char out[128];
    uint32_t i;

    for (i = 0; i < len; i++)
        out[i] = in[i];
    return TEE_SUCCESS;
}
