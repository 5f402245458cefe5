#include <string.h>
#include <tee_internal_api.h>

static const uint8_t expected[16];

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    if (params[1].memref.size < 16)
        return TEE_ERROR_SHORT_BUFFER;
    if (TEE_MemCompare(params[1].memref.buffer, expected, 16) != 0) {
        return TEE_ERROR_SECURITY;
    }
    return TEE_SUCCESS;
}
