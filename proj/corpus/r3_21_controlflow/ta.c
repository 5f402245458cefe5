#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    uint32_t sum = 0;
    uint32_t i;

    for (i = 0; i < 16; i++)
        sum += ((uint8_t *)params[2].memref.buffer)[i];
    (void)sum;
    return TEE_SUCCESS;
}
