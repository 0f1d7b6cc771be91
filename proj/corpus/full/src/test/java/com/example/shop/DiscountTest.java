package com.example.shop;

import static org.junit.jupiter.api.Assertions.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.jupiter.params.ParameterizedTest;
import org.junit.jupiter.params.provider.ValueSource;

public class DiscountTest {
    @ParameterizedTest
    @ValueSource(ints = {1, 2, 3})
    public void quotesScaleWithQuantity(int quantity) {
        Inventory inventory = mock(Inventory.class);
        PriceService prices = mock(PriceService.class);
        when(prices.priceOf("C3")).thenReturn(5);
        when(prices.currency()).thenReturn("EUR");
        Customer customer = mock(Customer.class);
        when(customer.isPremium()).thenReturn(false);
        assertEquals(5 * quantity, new OrderService(inventory, prices).quote("C3", quantity, customer));
    }
}
