#include <string.h>
#include <tee_internal_api.h>

static int mode;
static const char ref[8];

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    if (mode == 2) {
        if (TEE_MemCompare(params[3].memref.buffer, ref, 8))
            return TEE_ERROR_SECURITY;
    }
    return TEE_SUCCESS;
}
