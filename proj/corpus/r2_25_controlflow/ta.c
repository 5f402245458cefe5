#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint8_t tmp[256];
    uint32_t i;

    for (i = 0; i < params[2].memref.size; ++i) {
        tmp[i] = ((uint8_t *)params[2].memref.buffer)[i] ^ 0x5a;
    }
    return TEE_SUCCESS;
}
